#pragma once

// Linearization of the flattened interior and boundary problems about a
// frozen background (two-sided state + front), the characteristic-variable
// transform, vorticity transport, and normal-derivative reconstruction.
//
// Every closed-form coefficient used here is derived in
// docs/linearized_coefficients.md. tools/oracles/linearized_oracle.py checks
// each formula in exact arithmetic and freezes discrete probe values; the
// unit tests additionally compare the hand-coded slope derivatives against
// automatic differentiation of the defining entries.

#include "vsheet/euler.hpp"
#include "vsheet/geometry.hpp"
#include "vsheet/grid.hpp"
#include "vsheet/stencils.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace vsheet {

// ---------------------------------------------------------------------------
// frozen background: one side
// ---------------------------------------------------------------------------
// Holds the state U = (u, v, w, p), the flattening map Psi of that side, and
// cached stencil derivatives of both. All linearized operators freeze these
// coefficients; callers are responsible for eikonal consistency of (U, Psi)
// where an operator requires it (see docs/linearized_coefficients.md).
struct PhaseBackground {
    StateField U;
    Field3 psi;
    Field3 psi_x, psi_y, psi_z; // stencil slopes of Psi
    StateField dxU, dyU, dzU;   // stencil gradients of U

    FlowState state_at(int i, int j, int k) const {
        return {U[0](i, j, k), U[1](i, j, k), U[2](i, j, k), U[3](i, j, k)};
    }
    Vec4 value_at(const StateField& f, int i, int j, int k) const {
        return Vec4(f[0](i, j, k), f[1](i, j, k), f[2](i, j, k), f[3](i, j, k));
    }
    // eikonal combination e = v - Psi_x u - Psi_z w (zero where consistent)
    double eikonal_at(int i, int j, int k) const {
        return U[1](i, j, k) - psi_x(i, j, k) * U[0](i, j, k) -
               psi_z(i, j, k) * U[2](i, j, k);
    }
};

struct Background {
    Grid3 grid;
    GasModel gas;
    PhaseBackground plus, minus;
    Field2 trace_psi;   // shared front trace psi(x, z)
    Field2 trace_x, trace_z; // its stencil slopes

    PhaseBackground& side(int s) { return s >= 0 ? plus : minus; }
    const PhaseBackground& side(int s) const { return s >= 0 ? plus : minus; }
};

// Freeze a background: copies the fields and caches all stencil derivatives.
// The shared trace and its slopes are taken from the j = 0 slice of Psi^+.
Background make_background(const TwoPhaseState& U, const FrontField& front,
                           const Grid3& grid, const GasModel& gas);

// Planar reference background: constant states, Psi^± = ±y, flat trace.
Background planar_reference(const Grid3& grid, const GasModel& gas,
                            const FlowState& right, const FlowState& left);

// ---------------------------------------------------------------------------
// pointwise coefficient building blocks
// ---------------------------------------------------------------------------

// boundary flux matrix Mt = A2 - a A1 - b A3 (rank 2 when v = a u + b w)
Mat4 boundary_flux_matrix(const FlowState& state, const GasModel& gas,
                          double a, double b);

// Inverse characteristic transform: columns are the two tangential null
// vectors (1,a,0,0), (0,b,1,0) and the acoustic eigenvectors (-a,1,-b,±s)
// of Mt, s = sqrt(1 + a^2 + b^2). Templated on the scalar so the tests can
// push dual numbers through the same entries the solver uses.
template <class S>
std::array<std::array<S, 4>, 4> transform_tinv_entries(const S& a, const S& b) {
    using std::sqrt;
    const S one(1.0), zero(0.0);
    const S s = sqrt(one + a * a + b * b);
    return {{{one, zero, -a, -a},
             {a, b, one, one},
             {zero, one, -b, -b},
             {zero, zero, s, -s}}};
}

// Closed-form forward transform T = Tinv^{-1}.
template <class S>
std::array<std::array<S, 4>, 4> transform_t_entries(const S& a, const S& b) {
    using std::sqrt;
    const S one(1.0), zero(0.0);
    const S s2 = one + a * a + b * b;
    const S s = sqrt(s2);
    const S half(0.5);
    return {{{(one + b * b) / s2, a / s2, -a * b / s2, zero},
             {-a * b / s2, b / s2, (one + a * a) / s2, zero},
             {-half * a / s2, half / s2, -half * b / s2, half / s},
             {-half * a / s2, half / s2, -half * b / s2, -half / s}}};
}

Mat4 transform_T(double a, double b);
Mat4 transform_Tinv(double a, double b);

// hand-coded slope derivatives of the Tinv entries (checked against AD)
Mat4 tinv_slope_derivative_a(double a, double b);
Mat4 tinv_slope_derivative_b(double a, double b);

// row scaling A0 = diag(1, 1, psi_y/s, -psi_y/s); A0 T Ab Tinv = diag(0,0,1,1)
Mat4 normal_scaling(double a, double b, double psi_y);

// incoming acoustic mode at y = 0: e_+ = (-a,1,-b,s) for side >= 0,
// e_- = (-a,1,-b,-s) for side < 0
Vec4 incoming_mode(int side, double a, double b);

// ---------------------------------------------------------------------------
// interior operators (per side; coefficients frozen from the background)
// ---------------------------------------------------------------------------

// first-order part  L V = A1 Dx V + (Mt/psi_y) Dy V + A3 Dz V
StateField apply_interior_operator(const PhaseBackground& bg, const Grid3& g,
                                   const GasModel& gas, const StateField& V);

// zero-order part  C V = (dA1 V) DxU + (dMt V / psi_y) DyU + (dA3 V) DzU
StateField apply_zero_order(const PhaseBackground& bg, const Grid3& g,
                            const GasModel& gas, const StateField& V);

// effective linearized operator L V + C V (acts on good unknowns)
StateField apply_effective_operator(const PhaseBackground& bg, const Grid3& g,
                                    const GasModel& gas, const StateField& V);

// full linearization including the front increment dPhi:
//   (L + C) V - (Dy dPhi / psi_y^2) Mt DyU - (Dx dPhi A1 + Dz dPhi A3) DyU / psi_y
StateField apply_full_linearized(const PhaseBackground& bg, const Grid3& g,
                                 const GasModel& gas, const StateField& V,
                                 const Field3& dPhi);

// good unknown  V - dPhi * DyU / psi_y (absorbs the front increment)
StateField good_unknown(const PhaseBackground& bg, const Grid3& g,
                        const StateField& V, const Field3& dPhi);

// zero-order coefficient as a matrix at one node (columns C e_m)
Mat4 zero_order_matrix(const PhaseBackground& bg, const GasModel& gas,
                       int i, int j, int k);

// ---------------------------------------------------------------------------
// characteristic variables
// ---------------------------------------------------------------------------

StateField diagonalize(const PhaseBackground& bg, const StateField& V);   // W = T V
StateField undiagonalize(const PhaseBackground& bg, const StateField& W); // V = Tinv W
StateField transform_source(const PhaseBackground& bg, const StateField& f); // A0 T f

// transformed flux coefficients at a node:  A0 T A1 Tinv  /  A0 T A3 Tinv
Mat4 transformed_flux_x(const PhaseBackground& bg, const GasModel& gas,
                        int i, int j, int k);
Mat4 transformed_flux_z(const PhaseBackground& bg, const GasModel& gas,
                        int i, int j, int k);

// stencil derivative (axis 0 = x, 1 = y, 2 = z) of the Tinv entry fields at
// a node, obtained by differencing the entries as grid functions of the
// background slopes (the production path for the transformed zero order)
Mat4 stencil_dTinv(const PhaseBackground& bg, const Grid3& g, int axis,
                   int i, int j, int k);

// transformed zero-order coefficient at a node:
//   A0 [ T (A1 DxTinv + A3 DzTinv + Ab DyTinv) + T C Tinv ]
Mat4 transformed_zero_order(const PhaseBackground& bg, const Grid3& g,
                            const GasModel& gas, int i, int j, int k);

// ---------------------------------------------------------------------------
// boundary operator at y = 0
// ---------------------------------------------------------------------------

// rows: (grad coefficient) . (Dx dphi, Dz dphi) + [zero coefficient * dphi]
//       + (trace coefficient) . (V+|V-)|_{y=0}
struct BoundaryOperator {
    Eigen::Matrix<double, 3, 2> grad_coeff;  // rows x (d/dx, d/dz) of dphi
    Eigen::Vector3d zero_coeff;              // multiplies dphi itself
    Eigen::Matrix<double, 3, 8> trace_coeff; // acts on stacked traces
};

BoundaryOperator assemble_boundary_operator(const Background& bg, int i, int k);

// Apply the three boundary rows over the whole boundary plane. The zero-order
// dphi coefficient is the part absorbed by the iteration's error ledger; the
// solvers use include_zero_order = false, the diagnostics use true.
std::array<Field2, 3> apply_boundary_operator(const Background& bg,
                                              const TwoPhaseState& V,
                                              const Field2& dphi,
                                              bool include_zero_order);

// nonlinear boundary map rows of the background itself:
//   (psi_x u - v + psi_z w)|^+, same |^-, p^+ - p^-   at y = 0
std::array<Field2, 3> nonlinear_boundary_map(const Background& bg);

// the same three rows for an arbitrary state/trace pair (slopes of psi by
// the boundary-plane stencils)
std::array<Field2, 3> boundary_map(const TwoPhaseState& U, const Field2& psi,
                                   const Grid3& g);

// nonlinear flattened interior operator
//   L(U, Psi) U = A1(U) Dx U + (Mt(U, Psi)/Psi_y) Dy U + A3(U) Dz U
// evaluated with the frozen-coefficient stencils (the linearized operators
// above are exact derivatives of this map)
StateField apply_flattened_euler(const StateField& U, const Field3& psi,
                                 const Grid3& g, const GasModel& gas);

// ---------------------------------------------------------------------------
// rank diagnostic of the boundary-normal coefficient
// ---------------------------------------------------------------------------

// SVD of Ab = Mt/psi_y at every boundary-adjacent node (j = 0 and j = 1,
// both sides). On an eikonal-consistent background the rank is exactly 2.
struct BoundaryRankReport {
    int min_rank = 4;
    int max_rank = 0;
    double min_gap = std::numeric_limits<double>::infinity(); // sv2 - sv3
    double max_gap = 0.0;
    double min_sigma2 = std::numeric_limits<double>::infinity(); // kept
    double max_sigma3 = 0.0;                                     // discarded
    double max_eikonal_residual = 0.0; // max |v - a u - b w| over sampled nodes
    bool characteristic = false;       // every sampled node has rank exactly 2
};

BoundaryRankReport boundary_matrix_rank(const Background& bg,
                                        double rank_tol = 1e-6);

// ---------------------------------------------------------------------------
// vorticity transport
// ---------------------------------------------------------------------------

struct VorticityPair {
    Field3 xi, zeta;
};

// xi = X V_2 - Y V_1, zeta = Z V_2 - Y V_3 with the background tangential
// frame X = Dx - (a/psi_y) Dy, Y = Dy/psi_y, Z = Dz - (b/psi_y) Dy
VorticityPair vorticity_fields(const PhaseBackground& bg, const Grid3& g,
                               const StateField& V);

// residual of the derived transport equations
//   T xi = X ft_2 - Y ft_1 + (commutator sources),  ft = f - C V,
// where f is the interior source of (L + C) V = f; O(h^2) when V solves it
VorticityPair vorticity_transport_residual(const PhaseBackground& bg,
                                           const Grid3& g, const GasModel& gas,
                                           const StateField& V,
                                           const StateField& f);

// ---------------------------------------------------------------------------
// normal-derivative reconstruction
// ---------------------------------------------------------------------------

// Rebuild Dy W from tangential derivatives only:
//   rows 1,2: the 2x2 vorticity solve (docs, section 4),
//   rows 3,4: rows of the transformed problem with source F = A0 T f.
// Linear in (W, xi, zeta, F) jointly.
StateField reconstruct_normal_derivatives(const PhaseBackground& bg,
                                          const Grid3& g, const GasModel& gas,
                                          const StateField& W,
                                          const Field3& xi, const Field3& zeta,
                                          const StateField& F);

} // namespace vsheet
