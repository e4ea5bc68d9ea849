// scattering_dressed.hpp — dressed-picture low-saturation amplitudes: the
// single-resonance Cascade-AT amplitude, the two-resonance Cascade-EIT
// amplitude, the bare/dressed comparison, and the pathway decomposition
// entry point shared with the CLI.

#pragma once

#include <cmath>
#include <complex>

#include "cascade/atom.hpp"
#include "cascade/errors.hpp"
#include "cascade/scattering_bare.hpp"

namespace cascade {

// First-order dressed states drop O((Wc/2dc)^2) normalization terms; capping
// the mixing angle at 0.32 keeps that below ~10%.
inline constexpr double mixing_bound = 0.32;

// Dressed doublet data at fixed coupling photon number: mixing angle,
// energies (e_a = 0, e_b = -dc exactly) and effective decay rates.
struct DressedBasis {
    double mixing{0.0};
    double e_a{0.0};
    double e_b{0.0};
    double gamma_a{0.0};
    double gamma_b{0.0};
};

inline DressedBasis dressed_basis(const AtomRates& r, const DriveParams& d) {
    if (d.delta_c == 0.0) {
        throw DegenerateRegime("dressed_basis: expansion invalid at delta_c = 0");
    }
    const double mixing = 0.5 * d.omega_c / d.delta_c;
    if (std::abs(mixing) > mixing_bound) {
        throw RegimeViolation("dressed_basis: |omega_c/(2 delta_c)| exceeds 0.32");
    }
    DressedBasis b;
    b.mixing = mixing;
    b.e_a = 0.0;
    b.e_b = -d.delta_c;
    if (d.config == Config::cascade_at) {
        b.gamma_a = 0.0;
        b.gamma_b = r.w21;
    } else {
        b.gamma_a = r.w21;
        b.gamma_b = r.w31 + r.w32;
    }
    return b;
}

// Cascade-AT transition amplitude: a single resonance
//   (Wc/(2 dc))^2 / (dp + dc + i g13)
// with unit prefactor. No pathway decomposition exists for this configuration.
inline Complex at_amplitude(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_at, "at_amplitude");
    const DressedBasis b = dressed_basis(r, d); // gates delta_c != 0 and mixing
    const Complex pole(d.delta_p + d.delta_c, r.gamma13);
    if (std::abs(pole) < denominator_floor) {
        throw SingularDenominator("at_amplitude: resonance denominator underflow");
    }
    return (b.mixing * b.mixing) / pole;
}

// Cascade-EIT amplitude in the dressed picture: the sum of two terms,
//   r1 = 1/(dp + i g12),  r2 = (Wc/(2 dc))^2 / (dp + dc + i g13).
inline ResonancePair eit_dressed_amplitude(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_eit, "eit_dressed_amplitude");
    const DressedBasis b = dressed_basis(r, d);
    const Complex d1(d.delta_p, r.gamma12);
    const Complex d2(d.delta_p + d.delta_c, r.gamma13);
    if (std::abs(d1) < denominator_floor || std::abs(d2) < denominator_floor) {
        throw SingularDenominator("eit_dressed_amplitude: denominator underflow");
    }
    ResonancePair out;
    out.r1 = 1.0 / d1;
    out.r2 = (b.mixing * b.mixing) / d2;
    out.total = out.r1 + out.r2;
    return out;
}

// Relative divergence between the approximate bare-picture amplitude and the
// dressed-picture amplitude at the same point:
//   |T_bare - T_dressed| / max(|T_bare|, 1e-30).
inline double compare_pictures(const AtomRates& r, const DriveParams& d) {
    detail::require_config(d, Config::cascade_eit, "compare_pictures");
    const Complex t_bare = approx_resonances(r, d).total;
    const Complex t_dressed = eit_dressed_amplitude(r, d).total;
    return std::abs(t_bare - t_dressed) / std::max(std::abs(t_bare), 1e-30);
}

// Pathway decomposition as exposed by the CLI: EIT has two interfering
// pathways in either picture, AT has exactly one and only in the dressed
// picture.
enum class Picture { bare, dressed };

inline const char* to_string(Picture p) {
    return p == Picture::bare ? "bare" : "dressed";
}

struct Decomposition {
    int pathway_count{0};
    Complex r1, r2, total;
    double cross{0.0}; // 2 Re(r1 conj r2); zero when only one pathway exists
};

inline Decomposition decompose(const AtomRates& r, const DriveParams& d, Picture picture) {
    Decomposition out;
    if (d.config == Config::cascade_at) {
        if (picture == Picture::bare) {
            throw DomainError("bare-picture scattering undefined for Cascade-AT");
        }
        out.pathway_count = 1;
        out.r1 = at_amplitude(r, d);
        out.r2 = Complex(0.0, 0.0);
        out.total = out.r1;
        out.cross = 0.0;
        return out;
    }
    const ResonancePair p = picture == Picture::bare ? exact_decomposition(r, d)
                                                     : eit_dressed_amplitude(r, d);
    out.pathway_count = 2;
    out.r1 = p.r1;
    out.r2 = p.r2;
    out.total = p.total;
    out.cross = 2.0 * std::real(p.r1 * std::conj(p.r2));
    return out;
}

} // namespace cascade
