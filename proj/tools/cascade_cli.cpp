// cascade_cli.cpp — command-line front end: spectra, separation sweeps,
// pathway decompositions, picture comparison, and randomized self-checks.
//
// Exit codes: 0 success, 1 failed verification check, 2 configuration error,
// 3 I/O error, 4 domain error. Data goes to stdout unless --output is given;
// diagnostics go to stderr.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/cascade.hpp"

namespace {

using cascade::format_double;
using cascade::RunConfig;

// Raw flag storage per subcommand plus the canonical-key appliers that layer
// present flags over config-file values.
struct FlagSet {
    std::string config_file;
    CLI::Option* config_file_opt{nullptr};

    std::string config, output, format, picture;
    double w21{0}, w31{0}, w32{0};
    double gamma12{0}, gamma13{0}, gamma23{0};
    double omega_c{0}, delta_c{0}, delta_p{0};
    double grid_start{0}, grid_stop{0};
    std::size_t grid_points{0};
    double wc_start{0}, wc_stop{0};
    std::size_t wc_points{0};
    bool normalize{false}, raman{false}, signed_values{false};
    int figure{0};
    std::uint64_t seed{0};

    struct Entry {
        std::string key;
        CLI::Option* opt;
        std::function<std::string()> value;
    };
    std::vector<Entry> entries;
};

void add_common_flags(CLI::App& sub, FlagSet& f) {
    f.config_file_opt = sub.add_option(
        "--config-file", f.config_file,
        "key=value or JSON config file; explicit flags override file values");

    auto track = [&f](const std::string& key, CLI::Option* opt,
                      std::function<std::string()> value) {
        f.entries.push_back({key, opt, std::move(value)});
    };
    auto num = [&](const std::string& flag, const std::string& key, double& slot,
                   const std::string& desc) {
        track(key, sub.add_option(flag, slot, desc),
              [&slot] { return format_double(slot); });
    };
    auto count = [&](const std::string& flag, const std::string& key, std::size_t& slot,
                     const std::string& desc) {
        track(key, sub.add_option(flag, slot, desc),
              [&slot] { return std::to_string(slot); });
    };
    auto text = [&](const std::string& flag, const std::string& key, std::string& slot,
                    const std::string& desc) {
        track(key, sub.add_option(flag, slot, desc), [&slot] { return slot; });
    };
    auto toggle = [&](const std::string& flag, const std::string& key, bool& slot,
                      const std::string& desc) {
        track(key, sub.add_flag(flag, slot, desc),
              [&slot] { return slot ? "true" : "false"; });
    };

    text("--config", "config", f.config,
         "configuration: eit (probe on the lower transition) or at (probe on the upper)");
    num("--w21", "w21", f.w21, "spontaneous decay rate of the middle level");
    num("--w31", "w31", f.w31, "top-level decay rate to the ground state");
    num("--w32", "w32", f.w32, "top-level decay rate to the middle level");
    num("--gamma12", "gamma12", f.gamma12, "polarization decay rate of the lower transition");
    num("--gamma13", "gamma13", f.gamma13, "polarization decay rate of the two-photon coherence");
    num("--gamma23", "gamma23", f.gamma23,
        "polarization decay rate of the upper transition (= gamma12 + gamma13)");
    num("--omega-c", "omega-c", f.omega_c, "coupling Rabi frequency (>= 0)");
    num("--delta-c", "delta-c", f.delta_c, "coupling detuning");
    num("--delta-p", "delta-p", f.delta_p, "probe detuning (decompose / compare-pictures)");
    num("--grid-start", "grid-start", f.grid_start, "probe grid start");
    num("--grid-stop", "grid-stop", f.grid_stop, "probe grid stop");
    count("--grid-points", "grid-points", f.grid_points, "probe grid point count (>= 3)");
    num("--omega-c-start", "omega-c-start", f.wc_start, "coupling sweep start");
    num("--omega-c-stop", "omega-c-stop", f.wc_stop, "coupling sweep stop");
    count("--omega-c-points", "omega-c-points", f.wc_points,
          "coupling sweep point count (1 for a single row, else >= 3)");
    text("--output,-o", "output", f.output, "output path (default: stdout)");
    text("--format", "format", f.format, "output format: csv or json");
    text("--picture", "picture", f.picture, "decomposition picture: bare or dressed");
    toggle("--normalize", "normalize", f.normalize, "divide values by max |value|");
    toggle("--raman-substituted", "raman-substituted", f.raman,
           "use the Raman-substituted second resonance in compare-pictures");
    toggle("--signed", "signed", f.signed_values,
           "emit signed Im values instead of |Im| magnitudes");
    track("figure", sub.add_option("--figure", f.figure,
                                   "figure preset: 2 (spectrum) or 3 (separation)"),
          [&f] { return std::to_string(f.figure); });
    track("seed", sub.add_option("--seed", f.seed, "PRNG seed for verify"),
          [&f] { return std::to_string(f.seed); });
}

RunConfig build_config(const FlagSet& f) {
    RunConfig cfg;
    if (f.config_file_opt != nullptr && f.config_file_opt->count() > 0) {
        cascade::apply_config_file(cfg, f.config_file);
    }
    for (const auto& e : f.entries) {
        if (e.opt->count() > 0) cascade::apply_key(cfg, e.key, e.value());
    }
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        if (!std::cout) throw cascade::IoError("stdout: write failure");
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw cascade::IoError("output: cannot open '" + cfg.output_path + "'");
    out << text;
    out.flush();
    if (!out) throw cascade::IoError("output: write failure on '" + cfg.output_path + "'");
}

std::vector<double> present_values(const std::vector<double>& raw, bool signed_values,
                                   bool normalize) {
    std::vector<double> v = raw;
    if (!signed_values) {
        for (double& x : v) x = std::abs(x);
    }
    if (normalize) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        if (m > 0.0) {
            for (double& x : v) x /= m;
        }
    }
    return v;
}

std::vector<std::string> rate_comments(const cascade::AtomRates& r) {
    return {"gamma12=" + format_double(r.gamma12) + " gamma13=" + format_double(r.gamma13) +
            " gamma23=" + format_double(r.gamma23)};
}

nlohmann::json complex_json(const cascade::Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

int run_spectrum(const FlagSet& f) {
    RunConfig cfg = build_config(f);
    cascade::validate_run_config(cfg);
    if (cfg.figure && *cfg.figure != 2) {
        throw cascade::ConfigError("spectrum: only --figure 2 applies to this subcommand");
    }

    cascade::AtomRates rates;
    std::vector<double> grid;
    double wc = cfg.omega_c;
    double dc = cfg.delta_c;
    if (cfg.figure) {
        // Preset parameters; only presentation flags are honored.
        rates = cascade::default_rates();
        grid = cascade::default_probe_grid();
        wc = 1.5;
        dc = 0.0;
    } else {
        if (!cfg.config) {
            throw cascade::ConfigError("spectrum: --config eit|at is required (or use --figure 2)");
        }
        rates = cascade::resolve_rates(cfg);
        grid = cascade::linspace(cfg.probe_grid.start, cfg.probe_grid.stop,
                                 cfg.probe_grid.points);
    }

    std::vector<std::string> comments;
    comments.push_back("probe absorption spectrum");
    for (auto& c : rate_comments(rates)) comments.push_back(c);
    comments.push_back("omega_c=" + format_double(wc) + " delta_c=" + format_double(dc));
    comments.push_back(std::string("values=") +
                       (cfg.signed_values ? "Im(coherence), signed"
                                          : "|Im(coherence)|, negative-absorption convention"));
    comments.push_back(std::string("normalized=") + (cfg.normalize ? "yes" : "no"));
    comments.push_back("prefactor=1, arbitrary rate units, hbar=1");

    nlohmann::json meta;
    meta["gamma12"] = rates.gamma12;
    meta["gamma13"] = rates.gamma13;
    meta["gamma23"] = rates.gamma23;
    meta["omega_c"] = wc;
    meta["delta_c"] = dc;
    meta["signed"] = cfg.signed_values;
    meta["normalized"] = cfg.normalize;

    const bool dual = cfg.figure.has_value() && !cfg.config.has_value();
    if (dual) {
        const auto eit = cascade::spectrum(
            rates, cascade::make_drive(cascade::Config::cascade_eit, wc, dc), grid);
        const auto at = cascade::spectrum(
            rates, cascade::make_drive(cascade::Config::cascade_at, wc, dc), grid);
        const auto ve = present_values(eit.values, cfg.signed_values, cfg.normalize);
        const auto va = present_values(at.values, cfg.signed_values, cfg.normalize);
        if (cfg.format == "csv") {
            cascade::CsvTable t;
            t.comments = comments;
            t.columns = {"delta_p", "eit", "at"};
            t.data = {grid, ve, va};
            emit(cfg, cascade::to_csv_string(t));
        } else {
            nlohmann::json j;
            meta["config"] = "eit+at";
            j["meta"] = meta;
            j["delta_p"] = grid;
            j["eit"] = ve;
            j["at"] = va;
            emit(cfg, j.dump(2) + "\n");
        }
        return 0;
    }

    const cascade::Config config = *cfg.config;
    auto s = cascade::spectrum(rates, cascade::make_drive(config, wc, dc), grid);
    s.values = present_values(s.values, cfg.signed_values, cfg.normalize);
    s.label = "value";
    comments.insert(comments.begin() + 1,
                    std::string("config=") + cascade::to_string(config));
    if (cfg.format == "csv") {
        emit(cfg, cascade::to_csv_string(cascade::csv_from_series(s, "delta_p", comments)));
    } else {
        nlohmann::json j;
        meta["config"] = cascade::to_string(config);
        j["meta"] = meta;
        j["delta_p"] = s.grid;
        j["value"] = s.values;
        emit(cfg, j.dump(2) + "\n");
    }
    return 0;
}

int run_separation(const FlagSet& f) {
    RunConfig cfg = build_config(f);
    cascade::validate_run_config(cfg);
    if (cfg.figure && *cfg.figure != 3) {
        throw cascade::ConfigError("separation: only --figure 3 applies to this subcommand");
    }

    cascade::AtomRates rates;
    double dc = cfg.delta_c;
    std::vector<double> wc_grid;
    if (cfg.figure) {
        rates = cascade::default_rates();
        dc = 0.0;
        wc_grid = cascade::default_coupling_grid();
    } else {
        rates = cascade::resolve_rates(cfg);
        if (cfg.coupling_grid) {
            const auto& g = *cfg.coupling_grid;
            wc_grid = g.points == 1 ? std::vector<double>{g.start}
                                    : cascade::linspace(g.start, g.stop, g.points);
        } else {
            wc_grid = cascade::default_coupling_grid();
        }
    }

    const auto probe = cascade::wide_probe_grid(wc_grid.back());
    const auto eit =
        cascade::separation_curve(cascade::Config::cascade_eit, rates, dc, wc_grid, probe);
    const auto at =
        cascade::separation_curve(cascade::Config::cascade_at, rates, dc, wc_grid, probe);

    std::vector<std::string> comments;
    comments.push_back("peak separation vs coupling Rabi frequency");
    for (auto& c : rate_comments(rates)) comments.push_back(c);
    comments.push_back("delta_c=" + format_double(dc));
    comments.push_back("separation = max peak position - min peak position; 0 if single-peaked");

    if (cfg.format == "csv") {
        cascade::CsvTable t;
        t.comments = comments;
        t.columns = {"omega_c", "separation_eit", "separation_at"};
        t.data = {wc_grid, eit.values, at.values};
        emit(cfg, cascade::to_csv_string(t));
    } else {
        nlohmann::json j;
        j["meta"] = {{"gamma12", rates.gamma12},
                     {"gamma13", rates.gamma13},
                     {"gamma23", rates.gamma23},
                     {"delta_c", dc}};
        j["omega_c"] = wc_grid;
        j["separation_eit"] = eit.values;
        j["separation_at"] = at.values;
        emit(cfg, j.dump(2) + "\n");
    }
    return 0;
}

int run_decompose(const FlagSet& f) {
    RunConfig cfg = build_config(f);
    cascade::validate_run_config(cfg);
    if (cfg.figure) {
        throw cascade::ConfigError("decompose: figure presets do not apply to this subcommand");
    }
    if (!cfg.config) throw cascade::ConfigError("decompose: --config eit|at is required");

    const auto rates = cascade::resolve_rates(cfg);
    const auto drive =
        cascade::make_drive(*cfg.config, cfg.omega_c, cfg.delta_c, cfg.delta_p);
    const auto picture = cascade::resolve_picture(cfg);
    const auto dec = cascade::decompose(rates, drive, picture);

    nlohmann::json j;
    j["picture"] = cascade::to_string(picture);
    j["config"] = cascade::to_string(drive.config);
    j["omega_c"] = drive.omega_c;
    j["delta_c"] = drive.delta_c;
    j["delta_p"] = drive.delta_p;
    j["pathway_count"] = dec.pathway_count;
    j["r1"] = complex_json(dec.r1);
    j["r2"] = dec.pathway_count == 2 ? complex_json(dec.r2) : nlohmann::json(nullptr);
    j["total"] = complex_json(dec.total);
    j["cross_term"] = dec.cross;
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int run_compare(const FlagSet& f) {
    RunConfig cfg = build_config(f);
    cascade::validate_run_config(cfg);
    if (cfg.figure) {
        throw cascade::ConfigError(
            "compare-pictures: figure presets do not apply to this subcommand");
    }

    const auto rates = cascade::resolve_rates(cfg);
    const auto config = cfg.config.value_or(cascade::Config::cascade_eit);
    const auto drive = cascade::make_drive(config, cfg.omega_c, cfg.delta_c, cfg.delta_p);

    const cascade::Complex t_bare =
        cascade::approx_resonances(rates, drive, cfg.raman_substituted).total;
    const cascade::Complex t_dressed = cascade::eit_dressed_amplitude(rates, drive).total;
    const double divergence =
        cfg.raman_substituted
            ? std::abs(t_bare - t_dressed) / std::max(std::abs(t_bare), 1e-30)
            : cascade::compare_pictures(rates, drive);

    nlohmann::json j;
    j["config"] = cascade::to_string(config);
    j["omega_c"] = drive.omega_c;
    j["delta_c"] = drive.delta_c;
    j["delta_p"] = drive.delta_p;
    j["raman_substituted"] = cfg.raman_substituted;
    j["bare_total"] = complex_json(t_bare);
    j["dressed_total"] = complex_json(t_dressed);
    j["divergence"] = divergence;
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int run_verify(const FlagSet& f, std::size_t draws, const CLI::Option* draws_opt) {
    RunConfig cfg = build_config(f);
    // A broken gamma triple is routed into the rate-identity check instead of
    // failing at parse time.
    cascade::validate_run_config(cfg, /*validate_rates=*/false);

    cascade::VerifyOptions opt;
    opt.seed = cfg.seed;
    if (draws_opt->count() > 0) opt.draws = draws;
    if (cascade::has_gamma_triple(cfg)) {
        opt.gamma_triple = {{*cfg.gamma12, *cfg.gamma13, *cfg.gamma23}};
    }

    const auto results = cascade::run_verification(opt);
    std::ostringstream os;
    os << "seed: " << opt.seed << "\n";
    os << "draws: " << opt.draws << "\n";
    bool all = true;
    for (const auto& c : results) {
        all = all && c.pass;
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    }
    os << (all ? "all checks passed" : "verification failed") << "\n";
    emit(cfg, os.str());
    return all ? 0 : 1;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const cascade::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cascade::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cascade::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cascade-spectra: probe absorption and scattering-pathway analysis "
                 "for three-level cascade atoms"};
    app.require_subcommand(1);

    FlagSet fs_spectrum, fs_separation, fs_decompose, fs_compare, fs_verify;

    auto* spectrum_cmd = app.add_subcommand(
        "spectrum", "probe absorption over a detuning grid (--figure 2 preset emits both "
                    "configurations)");
    add_common_flags(*spectrum_cmd, fs_spectrum);

    auto* separation_cmd = app.add_subcommand(
        "separation", "peak separation vs coupling Rabi frequency for both configurations");
    add_common_flags(*separation_cmd, fs_separation);

    auto* decompose_cmd = app.add_subcommand(
        "decompose", "scattering-pathway decomposition at one probe detuning (JSON)");
    add_common_flags(*decompose_cmd, fs_decompose);

    auto* compare_cmd = app.add_subcommand(
        "compare-pictures", "bare vs dressed amplitude divergence at one point (JSON)");
    add_common_flags(*compare_cmd, fs_compare);

    auto* verify_cmd = app.add_subcommand(
        "verify", "randomized invariant checks with a reproducible seed");
    add_common_flags(*verify_cmd, fs_verify);
    std::size_t draws = 1000;
    auto* draws_opt =
        verify_cmd->add_option("--draws", draws, "random parameter draws per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (spectrum_cmd->parsed()) return guarded([&] { return run_spectrum(fs_spectrum); });
    if (separation_cmd->parsed()) {
        return guarded([&] { return run_separation(fs_separation); });
    }
    if (decompose_cmd->parsed()) return guarded([&] { return run_decompose(fs_decompose); });
    if (compare_cmd->parsed()) return guarded([&] { return run_compare(fs_compare); });
    if (verify_cmd->parsed()) {
        return guarded([&] { return run_verify(fs_verify, draws, draws_opt); });
    }
    return 2;
}
