// scattering_bare.hpp — bare-picture scattering machinery for Cascade-EIT:
// projected resolvent over the quasi-degenerate subspace, resonance
// eigenvalues, the exact two-pathway decomposition of the transition
// amplitude, and its low-saturation approximations.
//
// Prefactor convention: the unmeasurable overall scale (vacuum-mode and probe
// Rabi frequencies, quantization volume) is set to 1 everywhere; interference
// conclusions depend only on relative amplitudes.

#pragma once

#include <cmath>
#include <complex>

#include "cascade/atom.hpp"
#include "cascade/errors.hpp"

namespace cascade {

// 2x2 matrix of lim PG(E_i + i eta)P over the subspace spanned by
// (|phi2>, |phi3>), in that fixed order, so m11 = <phi2|G|phi2> is the element
// entering the transition amplitude.
//
// Index bookkeeping: inverting (E_i - H_eff) swaps the two propagator factors
// across the diagonal relative to the matrix being inverted, so
// m11 = (dp + dc + i g13)/D and m22 = (dp + i g12)/D. The ordering is pinned
// by the decoupled limit: at omega_c = 0, m11 must reduce to 1/(dp + i g12),
// the free propagator of the probed transition. The off-diagonal sign follows
// the omega_c >= 0 phase convention and never enters alone.
struct ResolventSubspace {
    Complex m11, m12, m21, m22;
    Complex g_phi2() const { return m11; }
};

// D = (dp + dc + i g13)(dp + i g12) - Wc^2/4, the determinant of the inverted
// subspace matrix; its roots are the resonance eigenvalues.
inline Complex determinant_d(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_eit, "determinant_d");
    const Complex i(0.0, 1.0);
    return (d.delta_p + d.delta_c + i * r.gamma13) * (d.delta_p + i * r.gamma12) -
           0.25 * d.omega_c * d.omega_c;
}

inline ResolventSubspace pgp_matrix(const AtomRates& r, const DriveParams& d) {
    const Complex D = determinant_d(r, d);
    if (std::abs(D) < denominator_floor) {
        throw SingularDenominator("pgp_matrix: |D| underflow");
    }
    const Complex i(0.0, 1.0);
    ResolventSubspace g;
    g.m11 = (d.delta_p + d.delta_c + i * r.gamma13) / D;
    g.m22 = (d.delta_p + i * r.gamma12) / D;
    g.m12 = g.m21 = -(0.5 * d.omega_c) / D;
    return g;
}

// Resonance eigenvalues Z_II, Z_III (roots of D in dp) plus the exact
// coupling-induced corrections read off Z_II = -i g12 - dc' + i gc'.
struct EigenPair {
    Complex z2, z3;
    double delta_c_prime{0.0};
    double gamma_c_prime{0.0};
};

inline EigenPair eigenvalues(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_eit, "eigenvalues");
    const Complex i(0.0, 1.0);
    const Complex w = d.delta_c + i * (r.gamma13 - r.gamma12);
    const Complex trace = -(d.delta_c + i * r.gamma23);
    const Complex root = std::sqrt(w * w + d.omega_c * d.omega_c); // principal branch
    const Complex za = 0.5 * (trace + root);
    const Complex zb = 0.5 * (trace - root);

    if (std::abs(za - zb) < 1e-12 * (std::abs(za) + std::abs(zb) + 1.0)) {
        throw ExceptionalPoint(
            "eigenvalues: Z_II = Z_III, two-pathway decomposition is singular");
    }

    // Relabel by continuity: z2 is the root tracking -i g12 - dc'(perturbative),
    // which keeps labels stable when a sweep crosses the square-root branch cut.
    const double dg = r.gamma13 - r.gamma12;
    const double wd = d.delta_c * d.delta_c + dg * dg;
    const double shift_est = wd > 0.0 ? -d.delta_c * (0.25 * d.omega_c * d.omega_c) / wd : 0.0;
    const Complex anchor = Complex(-shift_est, -r.gamma12);

    EigenPair e;
    if (std::abs(za - anchor) <= std::abs(zb - anchor)) {
        e.z2 = za;
        e.z3 = zb;
    } else {
        e.z2 = zb;
        e.z3 = za;
    }
    const Complex corr = e.z2 + i * r.gamma12; // = -dc' + i gc' exactly
    e.delta_c_prime = -corr.real();
    e.gamma_c_prime = corr.imag();
    return e;
}

// Low-saturation closed forms of the light shift and radiative correction.
// Exact counterparts are read off EigenPair; these are their leading order.
struct LightShift {
    double delta_c_prime{0.0};
    double gamma_c_prime{0.0};
};

inline LightShift light_shift_corrections(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_eit, "light_shift_corrections");
    const double dg = r.gamma13 - r.gamma12;
    const double denom = d.delta_c * d.delta_c + dg * dg;
    if (denom <= 0.0) {
        throw DegenerateRegime(
            "light_shift_corrections: delta_c = 0 with gamma13 = gamma12");
    }
    const double q = 0.25 * d.omega_c * d.omega_c;
    return LightShift{-d.delta_c * q / denom, -dg * q / denom};
}

// Two interfering scattering pathways plus their coherent sum.
struct ResonancePair {
    Complex r1, r2, total;
};

// Exact partial-fraction split of the amplitude over the two resonances:
//   r1 = (z2 + dc + i g13)/((z2 - z3)(dp - z2)),  r2 = -(z3 + ...)/(...(dp - z3)).
// The sum reproduces the <phi2|G|phi2> matrix element identically.
inline ResonancePair exact_decomposition(const AtomRates& r, const DriveParams& d) {
    const EigenPair e = eigenvalues(r, d); // throws at exceptional points
    const Complex i(0.0, 1.0);
    const Complex raman = d.delta_c + i * r.gamma13;
    const Complex split = e.z2 - e.z3;
    const Complex p2 = d.delta_p - e.z2;
    const Complex p3 = d.delta_p - e.z3;
    if (std::abs(p2) < denominator_floor || std::abs(p3) < denominator_floor) {
        throw SingularDenominator("exact_decomposition: probe sits on a real pole");
    }
    ResonancePair out;
    out.r1 = (e.z2 + raman) / (split * p2);
    out.r2 = -(e.z3 + raman) / (split * p3);
    out.total = out.r1 + out.r2;
    return out;
}

// Low-saturation two-resonance approximation:
//   r1 = 1/(dp + i g12)
//   r2 = [(Wc/2)/(dc + i(g13 - g12))]^2 / (dp + dc - dc' + i(g13 + gc'))
// raman_substituted swaps the squared propagator for the form with dc replaced
// by -dp, which is accurate only near the Raman condition dp ~ -dc.
inline ResonancePair approx_resonances(const AtomRates& r, const DriveParams& d,
                                       bool raman_substituted = false) {
    detail::require_config(d, Config::cascade_eit, "approx_resonances");
    const LightShift ls = light_shift_corrections(r, d); // degenerate-regime gate
    const Complex i(0.0, 1.0);
    const double dg = r.gamma13 - r.gamma12;

    const Complex d1 = d.delta_p + i * r.gamma12;
    const Complex pole = d.delta_p + d.delta_c - ls.delta_c_prime +
                         i * (r.gamma13 + ls.gamma_c_prime);
    if (std::abs(d1) < denominator_floor || std::abs(pole) < denominator_floor) {
        throw SingularDenominator("approx_resonances: resonance denominator underflow");
    }

    Complex pref;
    if (raman_substituted) {
        const Complex prop = d.delta_p + i * (r.gamma12 - r.gamma13);
        if (std::abs(prop) < denominator_floor) {
            throw SingularDenominator("approx_resonances: substituted propagator underflow");
        }
        pref = (0.25 * d.omega_c * d.omega_c) / (prop * prop);
    } else {
        const Complex f = (0.5 * d.omega_c) / (d.delta_c + i * dg);
        pref = f * f;
    }

    ResonancePair out;
    out.r1 = 1.0 / d1;
    out.r2 = pref / pole;
    out.total = out.r1 + out.r2;
    return out;
}

} // namespace cascade
