#pragma once

// Explicit marching solver for the front-flattened linearized problem.
//
// Interior system per side (coefficients frozen from a background):
//     A1 d_x V + Ab d_y V + A3 d_z V + C V = f,      Ab = Mt / Psi_y,
// coupled at y = 0 through the three boundary rows
//     rows 1,2:  u^± d_x phi + w^± d_z phi
//                + (psi_x V_1 - V_2 + psi_z V_3)^± = g_{1,2},
//     row  3:    V_4^+ - V_4^- = g_3,
// which determine the front perturbation phi together with one incoming
// acoustic mode per side. x is the time-like direction: the solution is
// built plane by plane from zero inflow data.
//
// Scheme. One-step explicit trapezoidal march in x (all characteristics of
// the supersonic system leave the inflow plane, so the update only ever
// looks upstream): with G_i(V) = -A1^{-1} (Ab Dy V + A3 Dz V + C V - f_i),
//     predictor  P       = V_i + hx G_i(V_i),
//     corrector  V_{i+1} = V_i + hx/2 [G_i(V_i) + G_{i+1}(P)],
// with centered y/z stencils in the interior and the one-sided y stencil in
// the provisional j = 0 row. After each plane lands, a per-z-node 3x3
// closure enforces the boundary rows at plane m by solving for
// (alpha^+, alpha^-, phi_{m+1}); alpha^± scale the incoming acoustic modes
// e_in^± = (-a, 1, -b, ±s), which perturb exactly one characteristic
// variable per side (W_3 on +, W_4 on -). The closure's centered d_x phi is
// the same stencil the residual monitor applies, so enforced boundary rows
// hold to round-off. The front therefore runs one plane ahead of the state.
// The outer edge j = ny-1 is a zero-extension truncation: data must be
// compactly supported below it. Boundary rows are enforced on planes
// 1..nx-2 (the last state plane has no phi plane beyond it); the monitor
// reports enforced-row and all-plane residuals separately. The interior
// monitor applies the centered-difference operator, against which the
// trapezoidal march carries an O(h^2) defect (reported, not round-off).

#include "vsheet/geometry.hpp"
#include "vsheet/linearized.hpp"
#include "vsheet/stability.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace vsheet {

// the 3x3 boundary closure lost rank (grossly distorted front slopes)
struct ClosureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One linear solve instance: the frozen planar sheet (stability gate), the
// background fields the coefficients are frozen from, and the data (f, g).
// The data must vanish on the inflow plane x = 0 up to the relative slack
// in MarchOptions (plane-0 values are never read by the scheme; the guard
// only rejects gross misuse).
struct LinearizedProblem {
    PlanarVortexSheet sheet;  // frozen planar part; gas model lives here
    TwoPhaseState U;          // background state, both sides
    FrontField front;         // background front, shared trace in force
    TwoPhaseState f;          // interior source, both sides
    std::array<Field2, 3> g;  // boundary source rows

    LinearizedProblem() = default;
    explicit LinearizedProblem(const Grid3& gr)
        : U(gr), front(gr), f(gr), g{Field2(gr), Field2(gr), Field2(gr)} {}
};

// zero-data problem on the planar background of a sheet (Psi^± = ±y)
LinearizedProblem planar_problem(const PlanarVortexSheet& sheet, const Grid3& g);

struct MarchOptions {
    double cfl_max = 0.95;      // marching stability margin
    double eikonal_tol = 1e-6;  // admissible background transport residual
    double closure_tol = 1e-10; // relative 3x3 determinant floor
    double inflow_tol = 0.1;    // |data(x=0)| <= inflow_tol * max |data|
    bool check_stability = true; // gate on the planar-sheet verdict
};

struct MarchDiagnostics {
    double cfl = 0.0;               // hx * max(|lam_y|/hy + |lam_z|/hz)
    double eikonal_residual = 0.0;  // background transport residual (max)
    double closure_det_min =
        std::numeric_limits<double>::infinity(); // min relative 3x3 det
    // monitor: centered-difference PDE rows (planes 1..nx-2, rows
    // j = 1..ny-2); O(h^2) defect for a marched solution
    double interior_residual_max = 0.0;
    double interior_residual_l2 = 0.0;
    // monitor: enforced boundary rows (planes 1..nx-2); round-off
    double boundary_residual_max = 0.0;
    double boundary_residual_l2 = 0.0;
    // boundary rows over all planes incl. the unenforced ones; O(h^2)
    double boundary_residual_all_max = 0.0;
};

struct MarchSolution {
    TwoPhaseState V;  // state perturbation (good unknown), both sides
    Field2 phi;       // front perturbation trace
    MarchDiagnostics diag;
};

// Pre-checks (in order): field sizes; inflow data guard; planar-sheet
// stability verdict; per-node hyperbolicity u > c and front slope signs;
// CFL (throws StepSizeError); background eikonal residual; closure
// determinant scan (throws ClosureError). Then marches and fills the
// residual monitors.
MarchSolution march_linearized(const LinearizedProblem& prob, const Grid3& g,
                               const MarchOptions& opt = {});

// Recompute the residual monitors for an arbitrary solution pair (the same
// stencil application the solver's diagnostics use; exported so the
// iteration's ledger can re-measure marched fields independently).
MarchDiagnostics march_residuals(const LinearizedProblem& prob, const Grid3& g,
                                 const TwoPhaseState& V, const Field2& phi);

// Largest |dy/dx| and |dz/dx| characteristic slopes of the frozen system at
// one state/slope set (closed forms from the pencil determinants; used by
// the CFL gate and exposed for tests).
double max_speed_y(const FlowState& st, const GasModel& gas, double a,
                   double b, double psi_y);
double max_speed_z(const FlowState& st, const GasModel& gas);

} // namespace vsheet
