#pragma once

#include <algorithm>
#include <cmath>

namespace condbound {

/// Central numeric tolerances shared by all solvers and certificate checks.
struct Tolerances {
    double feasibility = 1e-8;     ///< moment/constraint feasibility
    double gap_abs = 1e-6;         ///< absolute duality-gap acceptance
    double gap_rel = 1e-4;         ///< relative duality-gap acceptance
    double weight_norm = 1e-12;    ///< mixture weights must sum to 1 within this
    double event_mass_eps = 1e-9;  ///< below this, event mass counts as vanished
};

inline const Tolerances& tolerances() {
    static const Tolerances tol{};
    return tol;
}

/// Offset used to realize left-limit atoms ("t-minus" support points):
/// a Dirac at t - atom_epsilon(t) stands in for mass approaching t from below.
inline double atom_epsilon(double t) {
    return 1e-7 * std::max(1.0, std::abs(t));
}

inline bool gap_acceptable(double gap, double value) {
    const Tolerances& tol = tolerances();
    return gap <= std::max(tol.gap_abs, tol.gap_rel * std::abs(value));
}

}  // namespace condbound
