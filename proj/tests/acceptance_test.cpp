// acceptance_test.cpp — end-to-end checks of the library's headline behavior:
// split-spectrum reproduction with a closed-form transparency floor, peak
// separation asymptotics and regime thresholds, resonance-decomposition
// identities, weak-coupling limits, picture equivalence, interference
// witnesses, the single-pathway contract, and scale invariance.
//
// Prints one [PASS]/[FAIL] line per criterion; the exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "cascade/cascade.hpp"

using namespace cascade;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    namespace fs = std::filesystem;
    static int counter = 0;
    const auto tmp = [&](const char* stem) {
        return fs::temp_directory_path() /
               (std::string(stem) + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter));
    };
    const fs::path out = tmp("acc_out");
    const fs::path err = tmp("acc_err");
    ++counter;
    const std::string cmd = std::string(CASCADE_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    CliResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return res;
}

struct Draw {
    AtomRates rates;
    double omega_c;
    double delta_c;
    double delta_p;
};

Draw random_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> w21_dist(0.05, 2.0);
    std::uniform_real_distribution<double> w3x_dist(0.0, 1.0);
    std::uniform_real_distribution<double> wc_dist(0.0, 3.0);
    std::uniform_real_distribution<double> det_dist(-5.0, 5.0);
    const double w21 = w21_dist(rng);
    const double w31 = w3x_dist(rng);
    const double w32 = w3x_dist(rng);
    const double wc = wc_dist(rng);
    const double dc = det_dist(rng);
    const double dp = det_dist(rng);
    return Draw{make_atom_rates(w21, w31, w32), wc, dc, dp};
}

AtomRates figure_rates() { return atom_rates_from_gammas(0.5, 0.105, 0.605); }

using Outcome = std::pair<bool, std::string>;

Outcome criterion_split_spectrum() {
    const auto t0 = Clock::now();
    const AtomRates rates = figure_rates();
    const auto grid = default_probe_grid();
    const auto eit = spectrum(rates, make_drive(Config::cascade_eit, 1.5, 0.0), grid);
    const auto at = spectrum(rates, make_drive(Config::cascade_at, 1.5, 0.0), grid);
    const PeakReport pe = find_peaks(eit);
    const PeakReport pa = find_peaks(at);

    const double sym = pe.peaks.size() == 2
                           ? std::abs(pe.peaks[0].position + pe.peaks[1].position)
                           : 1e9;
    const bool local_min = std::abs(eit.values[600]) < std::abs(eit.values[599]) &&
                           std::abs(eit.values[600]) < std::abs(eit.values[601]);
    const double floor_err = std::abs(std::abs(eit.values[600]) - 0.105 / 0.615);
    const double elapsed = seconds_since(t0);

    const bool pass = pe.peaks.size() == 2 && sym <= 1e-3 && local_min &&
                      floor_err <= 1e-9 && pa.peaks.size() == 2 &&
                      pa.dip_depth < pe.dip_depth && elapsed < 1.0;
    std::ostringstream os;
    os << "lower-probe doublet symmetric to " << sym << ", transparency floor off by "
       << floor_err << ", dip depth " << pe.dip_depth << " vs upper-probe "
       << pa.dip_depth << " (" << elapsed << " s)";
    return {pass, os.str()};
}

Outcome criterion_separation_sweep() {
    const auto t0 = Clock::now();
    const AtomRates rates = figure_rates();
    const auto wc_grid = default_coupling_grid();
    const auto probe = wide_probe_grid(wc_grid.back());
    const auto sep_eit = separation_curve(Config::cascade_eit, rates, 0.0, wc_grid, probe);
    const auto sep_at = separation_curve(Config::cascade_at, rates, 0.0, wc_grid, probe);
    const double ratio_eit = sep_eit.values.back() / wc_grid.back();
    const double ratio_at = sep_at.values.back() / wc_grid.back();

    const double thr = regime_threshold(Config::cascade_at, rates, 0.0);
    const std::vector<double> sub = {0.25 * thr, 0.5 * thr};
    const auto sep_sub =
        separation_curve(Config::cascade_at, rates, 0.0, sub, wide_probe_grid(thr));
    const auto sep_eit_02 = separation_curve(Config::cascade_eit, rates, 0.0, {0.2},
                                             wide_probe_grid(0.2));
    const double elapsed = seconds_since(t0);

    const bool pass = ratio_eit >= 0.98 && ratio_eit <= 1.02 && ratio_at >= 0.98 &&
                      ratio_at <= 1.02 && sep_sub.values[0] == 0.0 &&
                      sep_sub.values[1] == 0.0 && sep_eit_02.values[0] > 0.0 &&
                      elapsed < 30.0;
    std::ostringstream os;
    os << "separation/omega_c at 50: " << ratio_eit << " and " << ratio_at
       << "; upper-probe split vanishes at 0.25 and 0.5 of threshold " << thr
       << "; lower-probe split " << sep_eit_02.values[0] << " at omega_c=0.2 ("
       << elapsed << " s)";
    return {pass, os.str()};
}

Outcome criterion_partial_fraction() {
    std::mt19937_64 rng(42);
    double worst = 0.0;
    int tested = 0;
    int skipped = 0;
    for (int k = 0; k < 1000; ++k) {
        const Draw d = random_draw(rng);
        const auto drive =
            make_drive(Config::cascade_eit, d.omega_c, d.delta_c, d.delta_p);
        try {
            const Complex total = exact_decomposition(d.rates, drive).total;
            const Complex direct = pgp_matrix(d.rates, drive).g_phi2();
            worst = std::max(worst, std::abs(total - direct) / std::abs(direct));
            ++tested;
        } catch (const ExceptionalPoint&) {
            ++skipped;
        } catch (const SingularDenominator&) {
            ++skipped;
        }
    }
    const bool pass = tested == 1000 && worst <= 1e-12;
    std::ostringstream os;
    os << "decomposition total vs direct resolvent element on " << tested
       << " draws, worst relative error " << worst << " (skipped " << skipped << ")";
    return {pass, os.str()};
}

Outcome criterion_trace_conservation() {
    std::mt19937_64 rng(42);
    double worst = 0.0;
    int tested = 0;
    for (int k = 0; k < 1000; ++k) {
        const Draw d = random_draw(rng);
        const auto drive =
            make_drive(Config::cascade_eit, d.omega_c, d.delta_c, d.delta_p);
        try {
            const EigenPair e = eigenvalues(d.rates, drive);
            const double residual =
                std::abs(e.z2 + e.z3 + Complex(d.delta_c, d.rates.gamma23));
            const double scale = std::max(1.0, std::abs(e.z2) + std::abs(e.z3));
            worst = std::max(worst, residual / scale);
            ++tested;
        } catch (const ExceptionalPoint&) {
        }
    }
    const bool pass = tested == 1000 && worst <= 1e-12;
    std::ostringstream os;
    os << "eigenvalue sum vs -(delta_c + i gamma23) on " << tested
       << " draws, worst residual " << worst;
    return {pass, os.str()};
}

Outcome criterion_weak_coupling_limits() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> mag(0.5, 5.0);
    std::bernoulli_distribution flip(0.5);
    double worst2 = 0.0;
    double worst3 = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Draw d = random_draw(rng);
        const double dc = flip(rng) ? mag(rng) : -mag(rng);
        const auto drive = make_drive(Config::cascade_eit, 1e-8, dc);
        const EigenPair e = eigenvalues(d.rates, drive);
        worst2 = std::max(worst2, std::abs(e.z2 + Complex(0.0, d.rates.gamma12)));
        worst3 = std::max(worst3, std::abs(e.z3 + Complex(dc, d.rates.gamma13)));
    }
    const bool pass = worst2 <= 1e-6 && worst3 <= 1e-6;
    std::ostringstream os;
    os << "at omega_c=1e-8 the roots revert to the bare poles within " << worst2
       << " and " << worst3;
    return {pass, os.str()};
}

Outcome criterion_picture_equivalence() {
    const AtomRates rates = figure_rates();
    const std::vector<double> ladder = {0.8, 0.4, 0.2, 0.1};
    std::vector<double> div;
    for (double wc : ladder) {
        div.push_back(compare_pictures(rates, make_drive(Config::cascade_eit, wc, 10.0, -10.0)));
    }
    bool monotone = true;
    for (std::size_t k = 1; k < div.size(); ++k) monotone = monotone && div[k] < div[k - 1];
    const double deep =
        compare_pictures(rates, make_drive(Config::cascade_eit, 1.0, 100.0, -100.0));
    const bool pass = monotone && deep < 0.02;
    std::ostringstream os;
    os << "divergence falls " << div.front() << " -> " << div.back()
       << " along the coupling ladder and is " << deep << " at delta_c=100";
    return {pass, os.str()};
}

Outcome criterion_interference_witness() {
    const AtomRates rates = figure_rates();
    bool all_destructive = true;
    double worst_cross = -1e300;
    for (double wc : {0.05, 0.1, 0.2, 0.3}) {
        const auto rep =
            interference_report(rates, make_drive(Config::cascade_eit, wc, 0.0, 0.0));
        all_destructive = all_destructive && rep.cross < 0.0;
        worst_cross = std::max(worst_cross, rep.cross);
    }
    // Second-resonance pole at delta_c = 0: both roots sit at Re z = 0 below
    // the branch-splitting coupling, so the pole probe detuning is Re z3.
    const auto drive = make_drive(Config::cascade_eit, 0.3, 0.0);
    const EigenPair e = eigenvalues(rates, drive);
    const auto dec = exact_decomposition(
        rates, make_drive(Config::cascade_eit, 0.3, 0.0, std::real(e.z3)));
    const double ratio = std::abs(dec.r2) / std::abs(dec.r1);
    const bool pass = all_destructive && ratio > 0.5;
    std::ostringstream os;
    os << "cross term < 0 at line center for all four couplings (max " << worst_cross
       << "); |r2|/|r1| = " << ratio << " at the second pole for omega_c=0.3";
    return {pass, os.str()};
}

Outcome criterion_single_pathway() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> wc_dist(0.05, 1.0);
    std::uniform_real_distribution<double> mag(2.0, 10.0);
    std::bernoulli_distribution flip(0.5);
    std::uniform_real_distribution<double> det_dist(-5.0, 5.0);
    bool all_single = true;
    for (int k = 0; k < 200; ++k) {
        const Draw d = random_draw(rng);
        const double dc = flip(rng) ? mag(rng) : -mag(rng);
        const auto drive =
            make_drive(Config::cascade_at, wc_dist(rng), dc, det_dist(rng));
        const Decomposition dec = decompose(d.rates, drive, Picture::dressed);
        all_single = all_single && dec.pathway_count == 1 &&
                     dec.r2 == Complex(0.0, 0.0) && dec.cross == 0.0 &&
                     dec.total == dec.r1;
    }

    const CliResult ok = run_cli(
        "decompose --config at --picture dressed --omega-c 1 --delta-c -10 --delta-p 10");
    bool cli_ok = ok.exit_code == 0;
    if (cli_ok) {
        const auto j = nlohmann::json::parse(ok.out, nullptr, false);
        cli_ok = !j.is_discarded() && j["pathway_count"] == 1 && j["r2"].is_null();
    }
    const CliResult bad = run_cli(
        "decompose --config at --picture bare --omega-c 1 --delta-c -10 --delta-p 10");
    const bool rejected =
        bad.exit_code == 4 &&
        bad.err.find("bare-picture scattering undefined for Cascade-AT") != std::string::npos;

    const bool pass = all_single && cli_ok && rejected;
    std::ostringstream os;
    os << "dressed upper-probe decomposition is single-pathway on 200 draws"
       << (all_single ? "" : " [violated]") << "; CLI reports pathway_count=1/r2=null"
       << (cli_ok ? "" : " [violated]") << "; bare picture rejected with exit 4"
       << (rejected ? "" : " [violated]");
    return {pass, os.str()};
}

Outcome criterion_scale_invariance() {
    const double lambda = 3.7;
    const AtomRates base = figure_rates();
    const AtomRates scaled =
        make_atom_rates(lambda * base.w21, lambda * base.w31, lambda * base.w32);
    double worst = 0.0;

    const auto grid = default_probe_grid();
    std::vector<double> scaled_grid = grid;
    for (double& x : scaled_grid) x *= lambda;

    double dip_diff = 0.0;
    for (Config config : {Config::cascade_eit, Config::cascade_at}) {
        const auto b = spectrum(base, make_drive(config, 1.5, 0.0), grid);
        const auto s = spectrum(scaled, make_drive(config, lambda * 1.5, 0.0), scaled_grid);
        double bmax = 0.0;
        double smax = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            bmax = std::max(bmax, std::abs(b.values[k]));
            smax = std::max(smax, std::abs(s.values[k]));
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            worst = std::max(worst, std::abs(std::abs(b.values[k]) / bmax -
                                             std::abs(s.values[k]) / smax));
        }
        dip_diff = std::max(dip_diff,
                            std::abs(find_peaks(b).dip_depth - find_peaks(s).dip_depth));
    }

    double sep_diff = 0.0;
    const auto probe = wide_probe_grid(2.0);
    std::vector<double> scaled_probe = probe;
    for (double& x : scaled_probe) x *= lambda;
    for (Config config : {Config::cascade_eit, Config::cascade_at}) {
        const double sb =
            separation_curve(config, base, 0.0, {2.0}, probe).values[0] / 2.0;
        const double ss = separation_curve(config, scaled, 0.0, {lambda * 2.0},
                                           scaled_probe)
                              .values[0] /
                          (lambda * 2.0);
        sep_diff = std::max(sep_diff, std::abs(sb - ss));
    }

    double cross_diff = 0.0;
    for (const auto& [wc, dc, dp] :
         {std::tuple{0.2, 0.0, 0.0}, std::tuple{1.0, 2.0, -2.0}}) {
        const auto rb =
            interference_report(base, make_drive(Config::cascade_eit, wc, dc, dp));
        const auto rs = interference_report(
            scaled, make_drive(Config::cascade_eit, lambda * wc, lambda * dc, lambda * dp));
        cross_diff = std::max(cross_diff, std::abs(rb.cross / rb.total_sq -
                                                   rs.cross / rs.total_sq));
    }

    const bool pass =
        worst <= 1e-10 && dip_diff <= 1e-10 && sep_diff <= 1e-10 && cross_diff <= 1e-10;
    std::ostringstream os;
    os << "lambda=3.7 rescaling shifts normalized spectra by " << worst
       << ", dip depth by " << dip_diff << ", separation/omega_c by " << sep_diff
       << ", cross/total by " << cross_diff;
    return {pass, os.str()};
}

} // namespace

int main() {
    struct Entry {
        int number;
        const char* title;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "split spectrum with closed-form transparency floor", criterion_split_spectrum},
        {2, "separation asymptote and regime split", criterion_separation_sweep},
        {3, "partial-fraction identity", criterion_partial_fraction},
        {4, "trace conservation", criterion_trace_conservation},
        {5, "weak-coupling limits", criterion_weak_coupling_limits},
        {6, "picture equivalence", criterion_picture_equivalence},
        {7, "interference witness", criterion_interference_witness},
        {8, "single-pathway contract", criterion_single_pathway},
        {9, "scale invariance", criterion_scale_invariance},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        Outcome outcome{false, "unexpected error"};
        try {
            outcome = e.fn();
        } catch (const std::exception& ex) {
            outcome = {false, std::string("unexpected error: ") + ex.what()};
        }
        if (!outcome.first) ++failures;
        std::cout << (outcome.first ? "[PASS]" : "[FAIL]") << " criterion " << e.number
                  << " (" << e.title << "): " << outcome.second << "\n";
    }
    std::cout << (failures == 0 ? "all 9 criteria satisfied"
                                : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
