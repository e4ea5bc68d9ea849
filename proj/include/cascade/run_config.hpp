// run_config.hpp — run configuration shared by the CLI subcommands: defaults,
// config-file loading (key=value or JSON), key application, validation, and
// resolution into library inputs. Flags always override file values.

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cascade/atom.hpp"
#include "cascade/errors.hpp"
#include "cascade/io.hpp"
#include "cascade/scattering_dressed.hpp"

namespace cascade {

struct GridSpec {
    double start{0.0};
    double stop{0.0};
    std::size_t points{0};
};

struct RunConfig {
    std::optional<Config> config;

    // Exactly one rate triple may be given; defaults below are used otherwise.
    std::optional<double> w21, w31, w32;
    std::optional<double> gamma12, gamma13, gamma23;

    double omega_c{1.5};
    double delta_c{0.0};
    double delta_p{0.0};

    GridSpec probe_grid{-3.0, 3.0, 1201};
    std::optional<GridSpec> coupling_grid; // separation sweep; preset grid otherwise

    std::string output_path; // empty = stdout
    std::string format{"csv"};
    std::string picture{"bare"};
    bool normalize{false};
    bool raman_substituted{false};
    bool signed_values{false}; // default emits |Im| so both curves plot upward
    std::optional<int> figure;
    std::uint64_t seed{42};
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double config_number(const std::string& key, const std::string& value) {
    try {
        return parse_double(trim(value));
    } catch (const IoError&) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

inline bool config_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: key '" + key + "' needs a boolean, got '" + value + "'");
}

inline std::size_t config_count(const std::string& key, const std::string& value) {
    const double v = config_number(key, value);
    if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw ConfigError("config: key '" + key + "' needs a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

} // namespace detail

// Apply one canonical key (long option name without dashes) to the config.
inline void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    using detail::config_bool;
    using detail::config_count;
    using detail::config_number;
    const std::string v = detail::trim(value);

    if (key == "config") {
        if (v == "eit") cfg.config = Config::cascade_eit;
        else if (v == "at") cfg.config = Config::cascade_at;
        else throw ConfigError("config: 'config' must be eit or at, got '" + v + "'");
    } else if (key == "w21") cfg.w21 = config_number(key, v);
    else if (key == "w31") cfg.w31 = config_number(key, v);
    else if (key == "w32") cfg.w32 = config_number(key, v);
    else if (key == "gamma12") cfg.gamma12 = config_number(key, v);
    else if (key == "gamma13") cfg.gamma13 = config_number(key, v);
    else if (key == "gamma23") cfg.gamma23 = config_number(key, v);
    else if (key == "omega-c") cfg.omega_c = config_number(key, v);
    else if (key == "delta-c") cfg.delta_c = config_number(key, v);
    else if (key == "delta-p") cfg.delta_p = config_number(key, v);
    else if (key == "grid-start") cfg.probe_grid.start = config_number(key, v);
    else if (key == "grid-stop") cfg.probe_grid.stop = config_number(key, v);
    else if (key == "grid-points") cfg.probe_grid.points = config_count(key, v);
    else if (key == "omega-c-start" || key == "omega-c-stop" || key == "omega-c-points") {
        if (!cfg.coupling_grid) cfg.coupling_grid = GridSpec{0.05, 50.0, 60};
        if (key == "omega-c-start") cfg.coupling_grid->start = config_number(key, v);
        else if (key == "omega-c-stop") cfg.coupling_grid->stop = config_number(key, v);
        else cfg.coupling_grid->points = config_count(key, v);
    } else if (key == "output") cfg.output_path = v;
    else if (key == "format") {
        if (v != "csv" && v != "json") {
            throw ConfigError("config: 'format' must be csv or json, got '" + v + "'");
        }
        cfg.format = v;
    } else if (key == "picture") {
        if (v != "bare" && v != "dressed") {
            throw ConfigError("config: 'picture' must be bare or dressed, got '" + v + "'");
        }
        cfg.picture = v;
    } else if (key == "normalize") cfg.normalize = config_bool(key, v);
    else if (key == "raman-substituted") cfg.raman_substituted = config_bool(key, v);
    else if (key == "signed") cfg.signed_values = config_bool(key, v);
    else if (key == "figure") {
        const auto f = static_cast<int>(config_number(key, v));
        if (f != 2 && f != 3) throw ConfigError("config: 'figure' must be 2 or 3");
        cfg.figure = f;
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(config_count(key, v));
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

// Load a config file: a flat JSON object, or key=value lines with '#'
// comments. Returned pairs preserve file order.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config file: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<std::pair<std::string, std::string>> entries;
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file: invalid JSON: " + std::string(e.what()));
        }
        if (!j.is_object()) throw ConfigError("config file: JSON root must be an object");
        for (const auto& [key, val] : j.items()) {
            if (val.is_string()) entries.emplace_back(key, val.get<std::string>());
            else if (val.is_boolean()) entries.emplace_back(key, val.get<bool>() ? "true" : "false");
            else if (val.is_number()) entries.emplace_back(key, format_double(val.get<double>()));
            else throw ConfigError("config file: key '" + key + "' has unsupported type");
        }
        return entries;
    }

    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file: expected key=value, got '" + t + "'");
        }
        entries.emplace_back(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
    }
    return entries;
}

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
    for (const auto& [key, value] : read_config_file(path)) apply_key(cfg, key, value);
}

// Figure-reproduction rates: gamma = (0.5, 0.105, 0.605).
inline AtomRates default_rates() {
    return atom_rates_from_gammas(0.5, 0.105, 0.605);
}

inline bool has_w_triple(const RunConfig& c) {
    return c.w21 || c.w31 || c.w32;
}

inline bool has_gamma_triple(const RunConfig& c) {
    return c.gamma12 || c.gamma13 || c.gamma23;
}

// validate_rates=false lets the verify subcommand route a broken gamma triple
// into its rate-identity check instead of failing at parse time.
inline void validate_run_config(const RunConfig& c, bool validate_rates = true) {
    if (has_w_triple(c) && has_gamma_triple(c)) {
        throw ConfigError("config: provide either the W triple or the gamma triple, not both");
    }
    if (has_w_triple(c) && !(c.w21 && c.w31 && c.w32)) {
        throw ConfigError("config: the W triple needs all of w21, w31, w32");
    }
    if (has_gamma_triple(c) && !(c.gamma12 && c.gamma13 && c.gamma23)) {
        throw ConfigError("config: the gamma triple needs all of gamma12, gamma13, gamma23");
    }
    if (validate_rates && has_gamma_triple(c)) {
        const double g23 = *c.gamma23;
        const double sum = *c.gamma12 + *c.gamma13;
        if (std::abs(g23 - sum) > 1e-9) {
            throw ConfigError("config: gamma23 = gamma12 + gamma13 violated: " +
                              format_double(g23) + " != " + format_double(sum));
        }
    }
    const auto check_grid = [](const GridSpec& g, const char* name) {
        if (g.points < 3) throw ConfigError(std::string("config: ") + name + " needs points >= 3");
        if (!(g.start < g.stop)) {
            throw ConfigError(std::string("config: ") + name + " needs start < stop");
        }
    };
    check_grid(c.probe_grid, "probe grid");
    // A one-point coupling sweep (single omega_c row) is allowed.
    if (c.coupling_grid && c.coupling_grid->points != 1) {
        check_grid(*c.coupling_grid, "omega-c grid");
    }
    if (!(c.omega_c >= 0.0)) throw ConfigError("config: omega-c must be >= 0");
}

inline AtomRates resolve_rates(const RunConfig& c) {
    try {
        if (has_w_triple(c)) return make_atom_rates(*c.w21, *c.w31, *c.w32);
        if (has_gamma_triple(c)) {
            return atom_rates_from_gammas(*c.gamma12, *c.gamma13, *c.gamma23);
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return default_rates();
}

inline Picture resolve_picture(const RunConfig& c) {
    return c.picture == "bare" ? Picture::bare : Picture::dressed;
}

} // namespace cascade
