// spectral_analysis.hpp — peak finding, peak-separation curves, transparency
// dip metrics, the interference cross-term diagnostic, and the two-peak
// regime threshold search.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "cascade/atom.hpp"
#include "cascade/errors.hpp"
#include "cascade/scattering_bare.hpp"
#include "cascade/steady_state.hpp"

namespace cascade {

struct Peak {
    double position{0.0};
    double height{0.0};
};

struct PeakReport {
    std::vector<Peak> peaks;      // sorted by position
    double separation{0.0};       // max position - min position; 0 if < 2 peaks
    double dip_depth{0.0};        // 1 - dip bottom / mean peak height; 0 if < 2 peaks
};

namespace detail {

// Vertex of the parabola through three samples (non-uniform spacing allowed).
// Falls back to the middle sample when the fit is not concave or the vertex
// escapes the bracket.
inline Peak refine_parabolic(double x0, double y0, double x1, double y1,
                             double x2, double y2) {
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    const double u = y0 - y1;
    const double v = y2 - y1;
    const double a = (u * d2 + v * d1) / (d1 * d2 * (d1 + d2));
    if (!(a < 0.0)) return Peak{x1, y1};
    const double b = v / d2 - a * d2;
    const double xs = x1 - 0.5 * b / a;
    if (!(xs >= x0 && xs <= x2)) return Peak{x1, y1};
    return Peak{xs, y1 - 0.25 * b * b / a};
}

struct RawPeak {
    std::size_t index; // leftmost sample of the maximum
    Peak peak;
};

} // namespace detail

// Interior local maxima of |value|, each refined by parabolic interpolation
// through the 3 surrounding samples. Plateau ties resolve to the leftmost
// sample; maxima closer than 2 grid steps are merged, keeping the taller.
inline PeakReport find_peaks(const SpectrumSeries& series) {
    validate_series(series);
    const auto& x = series.grid;
    const std::size_t n = x.size();
    if (n < 3) throw GridError("find_peaks: need at least 3 samples");

    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = std::abs(series.values[k]);

    std::vector<detail::RawPeak> raw;
    std::size_t k = 1;
    while (k + 1 < n) {
        if (!(a[k] > a[k - 1])) {
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j + 1 < n && a[j + 1] == a[k]) ++j; // walk a flat top
        if (j + 1 < n && a[j + 1] < a[k]) {
            if (j == k) {
                raw.push_back({k, detail::refine_parabolic(x[k - 1], a[k - 1], x[k],
                                                           a[k], x[k + 1], a[k + 1])});
            } else {
                raw.push_back({k, Peak{x[k], a[k]}}); // leftmost plateau sample
            }
        }
        k = (j == k) ? k + 1 : j;
    }

    // Merge near-coincident maxima: closer than twice the local grid step.
    std::vector<detail::RawPeak> merged;
    for (const auto& rp : raw) {
        if (!merged.empty()) {
            const std::size_t prev = merged.back().index;
            const double step = x[prev + 1] - x[prev];
            if (rp.peak.position - merged.back().peak.position < 2.0 * step) {
                if (rp.peak.height > merged.back().peak.height) merged.back() = rp;
                continue;
            }
        }
        merged.push_back(rp);
    }

    PeakReport rep;
    rep.peaks.reserve(merged.size());
    for (const auto& rp : merged) rep.peaks.push_back(rp.peak);

    if (rep.peaks.size() >= 2) {
        const double lo = rep.peaks.front().position;
        const double hi = rep.peaks.back().position;
        rep.separation = hi - lo;

        double bottom = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < n; ++m) {
            if (x[m] > lo && x[m] < hi) bottom = std::min(bottom, a[m]);
        }
        double mean = 0.0;
        for (const Peak& p : rep.peaks) mean += p.height;
        mean /= static_cast<double>(rep.peaks.size());
        if (std::isfinite(bottom) && mean > 0.0) {
            rep.dip_depth = 1.0 - bottom / mean;
        }
    }
    return rep;
}

// Peak separation versus coupling Rabi frequency at fixed delta_c; the output
// grid holds the omega_c values.
inline SpectrumSeries separation_curve(Config config, const AtomRates& rates,
                                       double delta_c,
                                       const std::vector<double>& omega_c_grid,
                                       const std::vector<double>& delta_p_grid) {
    validate_grid(omega_c_grid);
    validate_grid(delta_p_grid);
    SpectrumSeries out;
    out.grid = omega_c_grid;
    out.values.reserve(omega_c_grid.size());
    out.label = config == Config::cascade_eit ? "separation_eit" : "separation_at";
    for (double wc : omega_c_grid) {
        const DriveParams d = make_drive(config, wc, delta_c);
        out.values.push_back(find_peaks(spectrum(rates, d, delta_p_grid)).separation);
    }
    return out;
}

// Default coupling sweep: geometric 0.05..10 (60 points) to resolve the
// threshold region, then linear up to 50 (9 points, duplicate endpoint
// dropped) for the linear-separation regime.
inline std::vector<double> default_coupling_grid() {
    std::vector<double> g;
    const int n_geo = 60;
    for (int k = 0; k < n_geo; ++k) {
        g.push_back(0.05 * std::pow(200.0, static_cast<double>(k) / (n_geo - 1)));
    }
    for (double wc : linspace(10.0, 50.0, 9)) {
        if (wc > g.back() * (1.0 + 1e-12)) g.push_back(wc);
    }
    return g;
}

// Probe grid wide enough to hold both split peaks for every omega_c in a
// sweep, at the step used by the figure-reproduction checks.
inline std::vector<double> wide_probe_grid(double omega_c_max, double step = 0.005) {
    const double half = std::max(3.0, 0.8 * omega_c_max);
    const auto points = static_cast<std::size_t>(std::lround(2.0 * half / step)) + 1;
    return linspace(-half, half, points);
}

// Mod-square budget of the two-pathway amplitude at one point:
// |r1+r2|^2 = |r1|^2 + |r2|^2 + 2 Re(r1 conj r2). Negative cross means the
// pathways interfere destructively.
struct InterferenceReport {
    double r1_sq{0.0};
    double r2_sq{0.0};
    double cross{0.0};
    double total_sq{0.0};
};

inline InterferenceReport interference_report(const AtomRates& r, const DriveParams& d) {
    const ResonancePair p = exact_decomposition(r, d);
    InterferenceReport rep;
    rep.r1_sq = std::norm(p.r1);
    rep.r2_sq = std::norm(p.r2);
    rep.cross = 2.0 * std::real(p.r1 * std::conj(p.r2));
    rep.total_sq = std::norm(p.total);
    const double scale = std::max({rep.r1_sq, rep.r2_sq, rep.total_sq, 1e-300});
    if (std::abs(rep.total_sq - rep.r1_sq - rep.r2_sq - rep.cross) > 1e-12 * scale) {
        throw Error("interference_report: mod-square identity violated");
    }
    return rep;
}

// Bisection for the smallest omega_c whose absorption spectrum splits into
// two peaks. The probe grid is rebuilt per omega_c so the split peaks stay
// inside the scan window.
struct ThresholdOptions {
    double bracket_lo{1e-3};
    double bracket_hi{10.0};
    double tolerance{1e-3};
    double grid_step{0.0025};
};

inline double regime_threshold(Config config, const AtomRates& rates, double delta_c,
                               const ThresholdOptions& opt = {}) {
    const auto two_peaks = [&](double wc) {
        const double half = std::max(3.0, std::abs(delta_c) + 1.5 * wc);
        const auto points =
            static_cast<std::size_t>(std::lround(2.0 * half / opt.grid_step)) + 1;
        const DriveParams d = make_drive(config, wc, delta_c);
        const auto grid = linspace(-half, half, points);
        return find_peaks(spectrum(rates, d, grid)).peaks.size() >= 2;
    };

    double lo = opt.bracket_lo;
    double hi = opt.bracket_hi;
    if (two_peaks(lo)) return lo; // already split at the bottom of the bracket
    if (!two_peaks(hi)) {
        throw BracketError("regime_threshold: no two-peak spectrum inside the bracket");
    }
    while (hi - lo > opt.tolerance) {
        const double mid = 0.5 * (lo + hi);
        (two_peaks(mid) ? hi : lo) = mid;
    }
    return hi;
}

} // namespace cascade
