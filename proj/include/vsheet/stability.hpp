#pragma once

// Planar vortex-sheet backgrounds and the weak linear stability verdict.
//
// A planar sheet is the piecewise-constant two-sided state
//     U_r = (u_r, 0, w_r, p),  y > 0;   U_l = (u_l, 0, w_l, p),  y < 0,
// with common pressure and sonic speed c. The verdict evaluates, in order:
//   (a) supersonic in x on both sides:  u_r > c and u_l > c;
//   (b) nondegenerate, non-parallel tangential jump;
//   (c) the sign normalization w_r w_l < 0, achieved by a rigid rotation of
//       the tangential (u,w)-frame by the bisector of the two velocity
//       directions (the rotation is reported);
//   (d) the three stability inequalities
//         c^2/u_r^2 + c^2/u_l^2 < 1,
//         w_r^2 > c^2 and w_l^2 > c^2,
//         min_{theta in (theta_l, theta_r)} g(theta) < 1,
//       where g(t) = c^2/(u_l sin t - w_l cos t)^2
//                  + c^2/(u_r sin t - w_r cos t)^2,
//       theta_r = max(atan(w_l/u_l), atan(w_r/u_r)), theta_l = min(...);
//   (e) the non-resonance condition
//         (u_l w_r - u_r w_l)^2 != 2(c u_l + c u_r)^2 + 2(c w_l + c w_r)^2.
// All inequalities are 0-homogeneous in (u, w, c) and evaluated in the
// rotated frame.

#include "vsheet/euler.hpp"

#include <string>

namespace vsheet {

struct PlanarVortexSheet {
    double u_r = 0.0, w_r = 0.0; // tangential velocity, y > 0 side
    double u_l = 0.0, w_l = 0.0; // tangential velocity, y < 0 side
    double p_bar = 1.0;          // common pressure
    GasModel gas;

    double c_bar() const { return gas.sonic_speed_from_pressure(p_bar); }
    FlowState state_r() const { return {u_r, 0.0, w_r, p_bar}; }
    FlowState state_l() const { return {u_l, 0.0, w_l, p_bar}; }
};

enum class Verdict { WeaklyStable, Unstable, ParallelUnstable, NotSupersonic };

std::string to_string(Verdict v);

struct ConditionFlags {
    bool supersonic = false;      // u_r > c and u_l > c
    bool nonparallel = false;     // tangential fields not parallel
    bool sign_normalized = false; // w_r w_l < 0 after rotation
    bool velocity_line = false;   // c^2/u_r^2 + c^2/u_l^2 < 1
    bool shear_line = false;      // w_r^2 > c^2 and w_l^2 > c^2
    bool min_line = false;        // min g < 1
    bool nonresonance = false;    // algebraic != condition

    bool all() const {
        return supersonic && nonparallel && sign_normalized && velocity_line &&
               shear_line && min_line && nonresonance;
    }
};

struct StabilityVerdict {
    Verdict verdict = Verdict::Unstable;
    ConditionFlags flags;
    double theta_l = 0.0, theta_r = 0.0; // angle bounds in the rotated frame
    double min_value = 0.0;              // minimized quantity of the scan
    double argmin_theta = 0.0;
    double rotation_angle = 0.0;         // applied tangential-frame rotation
    bool marginal = false;               // some strict inequality within 1e-10 rel.
};

// (a) alone: supersonic-in-x test for both sides (strict).
bool check_supersonic(const PlanarVortexSheet& sheet);

// Angle bounds; throws std::domain_error if u_r <= 0 or u_l <= 0.
void theta_bounds(const PlanarVortexSheet& sheet, double& theta_l, double& theta_r);

// Rigid rotation of both tangential velocity vectors by `angle` (radians).
PlanarVortexSheet rotate_sheet(const PlanarVortexSheet& sheet, double angle);

// Bisecting rotation angle that normalizes the sheet so w_r w_l < 0 (for
// non-parallel fields): average of the two velocity direction angles.
double normalizing_rotation(const PlanarVortexSheet& sheet);

// g(theta) for the minimization line.
double g_of_theta(const PlanarVortexSheet& sheet, double theta);

// Coarse scan (n_grid points, default 1024) + golden-section polish over the
// open interval (theta_l, theta_r) clipped by eps = 1e-9 (theta_r - theta_l).
// Throws std::domain_error on an empty interval.
void min_theta_scan(const PlanarVortexSheet& sheet, int n_grid,
                    double& min_value, double& argmin_theta);

// Full verdict pipeline (rotation applied internally; inputs not modified).
StabilityVerdict weak_stability_verdict(const PlanarVortexSheet& sheet);

} // namespace vsheet
