#pragma once

// Smooth cutoff and bump profiles (C^2), shared by the front extension, the
// frequency cutoff of the smoothing operators, and manufactured test data.

#include <cmath>

namespace vsheet {

// Quintic smoothstep: 0 -> 1 on [0,1] with vanishing 1st and 2nd derivatives
// at both ends (C^2 across the joints).
inline double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline double smoothstep_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

// Bridge profile: 1 on (-inf, 1], 0 on [2, inf), C^2 in between.
// Used as the radial frequency cutoff chi(|xi|/theta).
inline double chi_bridge(double t) {
    return 1.0 - smoothstep(t - 1.0);
}

inline double chi_bridge_deriv(double t) {
    return -smoothstep_deriv(t - 1.0);
}

// Plateau in one variable: 1 on [<= t0], 0 on [>= t1], C^2 bridge between.
inline double plateau(double t, double t0, double t1) {
    if (t <= t0) return 1.0;
    if (t >= t1) return 0.0;
    return 1.0 - smoothstep((t - t0) / (t1 - t0));
}

inline double plateau_deriv(double t, double t0, double t1) {
    if (t <= t0 || t >= t1) return 0.0;
    return -smoothstep_deriv((t - t0) / (t1 - t0)) / (t1 - t0);
}

// C^2 compact bump on [-1, 1], max value 1 at 0: (1 - t^2)^3 clipped.
inline double bump(double t) {
    const double s = 1.0 - t * t;
    return s > 0.0 ? s * s * s : 0.0;
}

inline double bump_deriv(double t) {
    const double s = 1.0 - t * t;
    return s > 0.0 ? -6.0 * t * s * s : 0.0;
}

// Ramp that vanishes identically for t <= 0 and equals 1 for t >= 1 (same as
// smoothstep; alias for readability where it gates x-onset of test data).
inline double onset_ramp(double t) { return smoothstep(t); }

} // namespace vsheet
