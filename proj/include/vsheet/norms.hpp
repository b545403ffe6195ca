#pragma once

// Discrete weighted Sobolev norms on the slab and its boundary plane, the
// boundary-trace projection entering the energy estimate, and the
// energy-estimate ratio monitor.
//
// Definition used throughout: the weight is applied FIRST,
//     ||u||_{H^s_gamma}^2 = sum_{|beta| <= s} ||D^beta (e^{-gamma x} u)||_L2^2,
// with the module's second-order stencils and plain node-weighted L2 sums
// (hx hy hz per interior node, hx hz per boundary node). The tangential
// variant skips all y-derivatives; it realizes the L2_y(H^s) mixed norm.

#include "vsheet/geometry.hpp"
#include "vsheet/grid.hpp"

#include <array>
#include <vector>

namespace vsheet {

// plain L2-squared sums (no weight)
double l2_sq(const Field3& u, const Grid3& g);
double l2_sq(const Field2& u, const Grid3& g);

// interior norms; s in 0..3, gamma >= 0 (gamma = 0 gives the unweighted norm)
double weighted_norm_sq(const Field3& u, const Grid3& g, int s, double gamma);
double tangential_norm_sq(const Field3& u, const Grid3& g, int s, double gamma);

// boundary-plane norm on omega_X
double boundary_norm_sq(const Field2& u, const Grid3& g, int s, double gamma);

// componentwise sums for vector fields
double weighted_norm_sq(const StateField& u, const Grid3& g, int s, double gamma);
double weighted_norm_sq(const TwoPhaseState& u, const Grid3& g, int s, double gamma);
double tangential_norm_sq(const TwoPhaseState& u, const Grid3& g, int s, double gamma);

// ---------------------------------------------------------------------------
// boundary-trace projection: per side the 2-vector
//     P U^± = (psi_x U_1 - U_2 + psi_z U_3, U_4)|_{y=0},
// with the shared trace slopes of the front
// ---------------------------------------------------------------------------
struct PPTrace {
    std::array<Field2, 2> plus, minus;
};

PPTrace trace_pp(const TwoPhaseState& U, const FrontField& front, const Grid3& g);

// weighted L2-squared of all four trace components
double trace_pp_norm_sq(const PPTrace& t, const Grid3& g, double gamma);

// ---------------------------------------------------------------------------
// energy-estimate ratio monitor
//
//   LHS(gamma) = gamma ||U||^2_{L2_gamma} + ||P U|_{y=0}||^2_{L2_gamma}
//                + ||phi||^2_{H1_gamma(omega)}
//   RHS(gamma) = gamma^{-3} ||f||^2_{L2_y(H1_gamma)} + gamma^{-2} ||g||^2_{H1_gamma(omega)}
//
// The ratio LHS/RHS is a monitor compared against recorded baselines, never
// against an absolute constant. Zero (or near-zero) data are flagged vacuous.
// ---------------------------------------------------------------------------
struct EnergyRatioEntry {
    double gamma = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool vacuous = false;
};

std::vector<EnergyRatioEntry> energy_ratio(
    const TwoPhaseState& U, const Field2& phi, const TwoPhaseState& f,
    const std::array<Field2, 3>& gbnd, const FrontField& front, const Grid3& g,
    const std::vector<double>& gammas);

} // namespace vsheet
