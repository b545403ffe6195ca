#pragma once

// Gas model, flow states, symmetric-form flux matrices, hyperbolicity
// checks, and jump-condition residuals for 3D steady compressible
// isentropic Euler flow.
//
// The unknown vector is U = (u, v, w, p); density and sonic speed are
// derived from p through the polytropic law p = K rho^gamma. In symmetric
// form the system reads A1(U) dU/dx + A2(U) dU/dy + A3(U) dU/dz = 0 with
//
//        [ rho*u   0      0      1        ]        (A2, A3 analogous with
//   A1 = [ 0       rho*u  0      0        ]         v resp. w on the
//        [ 0       0      rho*u  0        ]         diagonal and the 1's in
//        [ 1       0      0      u/(rho c^2) ]      rows/cols 2 resp. 3)
//
// x is time-like iff A1 is positive definite iff u > c.

#include <Eigen/Dense>
#include <stdexcept>

namespace vsheet {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

// ---------------------------------------------------------------------------
// gas model: polytropic pressure law p = K rho^gamma, p'(rho) > 0
// ---------------------------------------------------------------------------
struct GasModel {
    double K = 1.0;     // pressure scale, > 0
    double gamma = 2.0; // adiabatic exponent, > 1

    double pressure_from_density(double rho) const;
    double density_from_pressure(double p) const;
    // c = sqrt(p'(rho)) = sqrt(K gamma rho^(gamma-1))
    double sonic_speed_from_density(double rho) const;
    double sonic_speed_from_pressure(double p) const;
};

// ---------------------------------------------------------------------------
// flow state U = (u, v, w, p) with derived rho, c
// ---------------------------------------------------------------------------
struct FlowState {
    double u = 0.0, v = 0.0, w = 0.0, p = 1.0;

    Vec4 as_vec() const { return Vec4(u, v, w, p); }
    static FlowState from_vec(const Vec4& q) { return {q[0], q[1], q[2], q[3]}; }

    double rho(const GasModel& gas) const { return gas.density_from_pressure(p); }
    double c(const GasModel& gas) const { return gas.sonic_speed_from_pressure(p); }
    bool supersonic_x(const GasModel& gas) const { return u > c(gas); }
};

// sonic speed at a state (throws std::domain_error for p <= 0)
double sonic_speed(const FlowState& state, const GasModel& gas);

// ---------------------------------------------------------------------------
// symmetric-form flux matrices and their state derivatives
// ---------------------------------------------------------------------------
struct FluxMatrices {
    Mat4 A1, A2, A3;
};

FluxMatrices flux_matrices(const FlowState& state, const GasModel& gas);

// Directional derivative of A_i at `state` in the state direction `dU`:
// returns (dA1(U)[dU], dA2(U)[dU], dA3(U)[dU]). These enter the zero-order
// coefficient of the linearized interior operator and the Newton residuals.
FluxMatrices flux_matrix_gradient(const FlowState& state, const GasModel& gas,
                                  const Vec4& dU);

// A1 positive-definite test via symmetric eigen-solve; must agree with u > c.
bool check_hyperbolic_x(const FlowState& state, const GasModel& gas,
                        double eig_tol_rel = 1e-12);

// smallest eigenvalue of A1 (diagnostic for the equivalence test)
double min_eig_A1(const FlowState& state, const GasModel& gas);

// ---------------------------------------------------------------------------
// jump conditions across a front y = psi(x,z) with slopes (psi_x, psi_z)
// ---------------------------------------------------------------------------
struct JumpResidual {
    Vec4 rh;                 // Rankine-Hugoniot residual (mass, x-, y-, z-momentum)
    double mass_flux_plus;   // m^+ = rho^+ (psi_x u - v + psi_z w)^+
    double mass_flux_minus;  // m^-
    double pressure_jump;    // p^+ - p^-
    bool contact;            // |m^+|, |m^-|, |[p]| all below tolerance
};

JumpResidual rh_residual(const FlowState& Uplus, const FlowState& Uminus,
                         double psi_x, double psi_z, const GasModel& gas,
                         double contact_tol = 1e-12);

} // namespace vsheet
