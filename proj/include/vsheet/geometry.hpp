#pragma once

// Front-flattening geometry: construction of the two-sided front functions
// Psi^± = ±y + small, with slope constraints ±d_y Psi^± >= kappa0 > 0, and
// the transport ("eikonal") solver
//     u^± d_x Psi^± - v^± + w^± d_z Psi^± = 0,
// marched in x independently per y-slice (y is a passive parameter).
// The shared boundary trace psi(x,z) = Psi^±(x,0,z) is stored once and
// written into both sides, so the trace identity holds by construction.

#include "vsheet/grid.hpp"
#include "vsheet/cutoffs.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace vsheet {

// error taxonomy for this module
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// front field: Psi^± on Omega with shared trace psi
// ---------------------------------------------------------------------------
struct FrontField {
    Field3 psi_plus, psi_minus; // Psi^+ and Psi^-
    Field2 psi;                 // shared trace, equals both j=0 slices
    double kappa0 = 0.5;        // slope lower bound in force

    FrontField() = default;
    explicit FrontField(const Grid3& g)
        : psi_plus(g), psi_minus(g), psi(g) {}

    Field3& side(int s) { return s >= 0 ? psi_plus : psi_minus; }
    const Field3& side(int s) const { return s >= 0 ? psi_plus : psi_minus; }

    // copy the shared trace into both j = 0 slices (storage invariant)
    void sync_trace(const Grid3& g) {
        for (int i = 0; i < g.nx; ++i)
            for (int k = 0; k < g.nz; ++k) {
                psi_plus(i, 0, k) = psi(i, k);
                psi_minus(i, 0, k) = psi(i, k);
            }
    }
};

// ---------------------------------------------------------------------------
// front extension cutoff chi(y): chi(0) = 1, chi == 0 for y >= 1, C^2.
// Shared by the initial front extension and by the boundary-to-interior
// extension operator used in the iteration sources.
// ---------------------------------------------------------------------------
inline double front_cutoff(double y) { return chi_bridge(1.0 + y); }
inline double front_cutoff_deriv(double y) { return chi_bridge_deriv(1.0 + y); }

// x = 0 initial data for the two front functions
struct FrontInitial {
    FieldYZ plus, minus;
};

// Extension of a boundary profile psi0(z) into {y >= 0}:
//     Psi_0^± = ±y + chi(y) psi0(z).
// Enforces the discrete slope bounds d_y Psi_0^+ >= slope_bound and
// d_y Psi_0^- <= -slope_bound (default 5/6); throws SizeError if psi0 is too
// large to keep them.
FrontInitial extend_front_initial(const std::vector<double>& psi0,
                                  const Grid3& grid,
                                  double slope_bound = 5.0 / 6.0);

// ---------------------------------------------------------------------------
// eikonal transport solver
// ---------------------------------------------------------------------------
struct EikonalReport {
    double cfl_used = 0.0;         // max |w/u| hx/hz encountered
    double min_slope_plus = 0.0;   // min over grid of d_y Psi^+
    double max_slope_minus = 0.0;  // max over grid of d_y Psi^-
    double trace_mismatch = 0.0;   // max |psi^+_march - psi^-_march| before averaging
    double residual_l2_plus = 0.0, residual_l2_minus = 0.0;
    double residual_max_plus = 0.0, residual_max_minus = 0.0;
};

// Velocity data per side: components (u, v, w) as grid functions.
struct VelocityField {
    Field3 u, v, w;
    VelocityField() = default;
    explicit VelocityField(const Grid3& g) : u(g), v(g), w(g) {}
};
struct TwoPhaseVelocity {
    VelocityField plus, minus;
    TwoPhaseVelocity() = default;
    explicit TwoPhaseVelocity(const Grid3& g) : plus(g), minus(g) {}
    VelocityField& side(int s) { return s >= 0 ? plus : minus; }
    const VelocityField& side(int s) const { return s >= 0 ? plus : minus; }
};

// Marches the transport equation per side and per y-slice with an SSP-RK3
// x-integrator and a second-order upwind z-derivative (generalized minmod
// slope limiting). The two marched traces at y=0 are averaged into the shared
// psi (mismatch reported). Throws StepSizeError on CFL violation and
// DegeneracyError if a discrete slope bound |d_y Psi| < kappa0 is reached.
FrontField solve_eikonal(const TwoPhaseVelocity& vel, const FrontInitial& init,
                         const Grid3& grid, double kappa0 = 0.5,
                         double cfl_max = 0.9, EikonalReport* report = nullptr);

// Discrete residual of the transport equation with the module's centered
// stencils (independent of the marching discretization).
EikonalReport eikonal_residual(const TwoPhaseVelocity& vel, const FrontField& front,
                               const Grid3& grid,
                               Field3* res_plus = nullptr, Field3* res_minus = nullptr);

// Method-of-characteristics closed form for constant coefficients (u,v,w):
//     Psi(x, y, z) = Psi_0(y, z - (w/u) x) + (v/u) x,
// with psi0 a continuous initial profile of (y, z). Used as the reference
// oracle in convergence tests.
double characteristic_solution(const std::function<double(double, double)>& psi0,
                               double u, double v, double w,
                               double x, double y, double z);

// ---------------------------------------------------------------------------
// boundary-to-interior extension operator: (E g)(x,y,z) = chi(y) g(x,z)
// ---------------------------------------------------------------------------
Field3 extend_boundary(const Field2& g2, const Grid3& grid);

} // namespace vsheet
