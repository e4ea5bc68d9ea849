// atom.hpp — three-level cascade atom: decay rates, drive parameters, regime checks
//
// Units: hbar = 1, every rate and detuning in one shared arbitrary rate unit.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "cascade/errors.hpp"

namespace cascade {

using Complex = std::complex<double>;

// Floor below which a closed-form denominator is treated as singular.
inline constexpr double denominator_floor = 1e-300;

// Field-role assignment: probe on the lower transition with the coupling on
// the upper one (EIT), or the reverse (AT).
enum class Config { cascade_eit, cascade_at };

inline const char* to_string(Config c) {
    return c == Config::cascade_eit ? "eit" : "at";
}

// Spontaneous decay rates W_ij plus the derived polarization decay rates.
struct AtomRates {
    double w21{0.0};
    double w31{0.0};
    double w32{0.0};
    double gamma12{0.0};
    double gamma13{0.0};
    double gamma23{0.0};
};

struct PolarizationRates {
    double gamma12{0.0};
    double gamma13{0.0};
    double gamma23{0.0};
};

// gamma12 = W21/2, gamma13 = (W31+W32)/2.  gamma23 is formed as the sum of
// the other two so gamma23 - gamma12 - gamma13 == 0 holds to the last bit.
inline PolarizationRates polarization_rates(double w21, double w31, double w32) {
    if (w21 < 0.0 || w31 < 0.0 || w32 < 0.0 || !std::isfinite(w21) ||
        !std::isfinite(w31) || !std::isfinite(w32)) {
        throw DomainError("polarization_rates: decay rates must be finite and >= 0");
    }
    PolarizationRates g;
    g.gamma12 = 0.5 * w21;
    g.gamma13 = 0.5 * (w31 + w32);
    g.gamma23 = g.gamma12 + g.gamma13;
    return g;
}

inline AtomRates make_atom_rates(double w21, double w31, double w32) {
    const PolarizationRates g = polarization_rates(w21, w31, w32);
    return AtomRates{w21, w31, w32, g.gamma12, g.gamma13, g.gamma23};
}

// Build rates from a polarization triple. Only the sum W31 + W32 enters any
// downstream formula, so the split is synthesized as (2*gamma13, 0).
inline AtomRates atom_rates_from_gammas(double gamma12, double gamma13,
                                        double gamma23, double tol = 1e-9) {
    if (gamma12 < 0.0 || gamma13 < 0.0 || gamma23 < 0.0) {
        throw DomainError("atom_rates_from_gammas: polarization rates must be >= 0");
    }
    if (std::abs(gamma23 - gamma12 - gamma13) > tol) {
        throw DomainError(
            "atom_rates_from_gammas: gamma23 = gamma12 + gamma13 violated: " +
            std::to_string(gamma23) + " != " + std::to_string(gamma12) + " + " +
            std::to_string(gamma13));
    }
    AtomRates r;
    r.w21 = 2.0 * gamma12;
    r.w31 = 2.0 * gamma13;
    r.w32 = 0.0;
    r.gamma12 = gamma12;
    r.gamma13 = gamma13;
    r.gamma23 = gamma12 + gamma13;
    return r;
}

// Coupling drive and probe detuning. The coupling phase is absorbed: only
// omega_c^2 enters every implemented formula, hence omega_c >= 0.
struct DriveParams {
    Config config{Config::cascade_eit};
    double omega_c{0.0};
    double delta_c{0.0};
    double delta_p{0.0};
};

inline DriveParams make_drive(Config config, double omega_c, double delta_c,
                              double delta_p = 0.0) {
    if (!(omega_c >= 0.0)) {
        throw DomainError("make_drive: omega_c must be >= 0 (coupling phase is absorbed)");
    }
    if (!std::isfinite(omega_c) || !std::isfinite(delta_c) || !std::isfinite(delta_p)) {
        throw DomainError("make_drive: drive parameters must be finite");
    }
    return DriveParams{config, omega_c, delta_c, delta_p};
}

// Saturation measure s = omega_c^2 / max(delta_c^2, (gamma12 - gamma13)^2).
// Callers treat s <= 0.1 as the low-saturation regime.
inline constexpr double low_saturation_threshold = 0.1;

inline double low_saturation_margin(const DriveParams& drive, const AtomRates& rates) {
    const double dg = rates.gamma12 - rates.gamma13;
    const double denom = std::max(drive.delta_c * drive.delta_c, dg * dg);
    if (denom <= 0.0) {
        throw DegenerateRegime(
            "low_saturation_margin: delta_c = 0 and gamma12 = gamma13 leave no scale");
    }
    return drive.omega_c * drive.omega_c / denom;
}

inline bool in_low_saturation(const DriveParams& drive, const AtomRates& rates) {
    return low_saturation_margin(drive, rates) <= low_saturation_threshold;
}

namespace detail {

inline void require_config(const DriveParams& d, Config expected, const char* op) {
    if (d.config != expected) {
        throw DomainError(std::string(op) + ": requires the cascade-" +
                          to_string(expected) + " configuration");
    }
}

} // namespace detail

} // namespace cascade
