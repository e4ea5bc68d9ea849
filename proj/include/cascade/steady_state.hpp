// steady_state.hpp — closed-form steady-state coherences and probe absorption spectra
//
// Proportionality constants are set to 1: only shapes, peak positions and
// relative depths are meaningful. The raw Im value is stored; plot-side
// negation/normalization is a CLI concern.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cascade/atom.hpp"
#include "cascade/errors.hpp"

namespace cascade {

// Steady-state coherence on the probed lower transition (Cascade-EIT):
//   -i (g13 - i(dp+dc)) / (Wc^2/4 + (g12 - i dp)(g13 - i(dp+dc)))
inline Complex rho21_eit(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_eit, "rho21_eit");
    const Complex i(0.0, 1.0);
    const Complex raman = r.gamma13 - i * (d.delta_p + d.delta_c);
    const Complex den = 0.25 * d.omega_c * d.omega_c + (r.gamma12 - i * d.delta_p) * raman;
    if (std::abs(den) < denominator_floor) {
        throw SingularDenominator("rho21_eit: denominator underflow");
    }
    return -i * raman / den;
}

// Steady-state coherence on the probed upper transition (Cascade-AT):
//   i s/(g12^2 + dc^2 + 2s) * (g23 + i dp) / ((g13 + i(dp+dc))(g23 + i dp) + s)
// with s = Wc^2/4.
inline Complex rho32_at(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_at, "rho32_at");
    const Complex i(0.0, 1.0);
    const double s = 0.25 * d.omega_c * d.omega_c;
    const double pop = r.gamma12 * r.gamma12 + d.delta_c * d.delta_c + 2.0 * s;
    const Complex num = r.gamma23 + i * d.delta_p;
    const Complex den = (r.gamma13 + i * (d.delta_p + d.delta_c)) * num + s;
    if (pop < denominator_floor || std::abs(den) < denominator_floor) {
        throw SingularDenominator("rho32_at: denominator underflow");
    }
    return i * (s / pop) * num / den;
}

// Probe absorption observable: Im rho21 (<= 0 near resonance) for EIT,
// Im rho32 (>= 0) for AT.
inline double absorption(const AtomRates& r, const DriveParams& d) {
    return d.config == Config::cascade_eit ? rho21_eit(r, d).imag()
                                           : rho32_at(r, d).imag();
}

// One sampled observable: a strictly increasing axis plus values. The axis is
// the probe detuning for spectra and the coupling Rabi frequency for
// separation curves.
struct SpectrumSeries {
    std::vector<double> grid;
    std::vector<double> values;
    std::string label;
};

inline void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw GridError("grid: empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k])) throw GridError("grid: non-finite sample");
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw GridError("grid: must be strictly increasing");
        }
    }
}

inline void validate_series(const SpectrumSeries& s) {
    validate_grid(s.grid);
    if (s.values.size() != s.grid.size()) {
        throw GridError("series: grid/value length mismatch");
    }
    for (double v : s.values) {
        if (!std::isfinite(v)) throw GridError("series: non-finite value");
    }
}

inline std::vector<double> linspace(double start, double stop, std::size_t points) {
    if (points < 2 || !(start < stop)) {
        throw GridError("linspace: need points >= 2 and start < stop");
    }
    std::vector<double> g(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) {
        g[k] = start + static_cast<double>(k) * step;
    }
    g.back() = stop;
    return g;
}

// Figure-reproduction default: dp in [-3, 3], 1201 points (features of width
// gamma13 ~ 0.1 get >= 20 samples).
inline std::vector<double> default_probe_grid() {
    return linspace(-3.0, 3.0, 1201);
}

// Pointwise absorption over a probe-detuning grid; pure order-preserving map.
inline SpectrumSeries spectrum(const AtomRates& r, DriveParams d,
                               const std::vector<double>& delta_p_grid) {
    validate_grid(delta_p_grid);
    SpectrumSeries s;
    s.grid = delta_p_grid;
    s.values.reserve(delta_p_grid.size());
    for (double dp : delta_p_grid) {
        d.delta_p = dp;
        s.values.push_back(absorption(r, d));
    }
    s.label = d.config == Config::cascade_eit ? "Im rho21" : "Im rho32";
    return s;
}

} // namespace cascade
