// Inflow-corner jet machinery: compatibility jets of the boundary traces at
// x = 0 and the approximate solution extended from them.
//
// The interior equations determine the x-derivatives of the front and of the
// flow at the inflow plane from tangential data alone:
//     d_x Psi = (v - d_z Psi w) / u,
//     d_x U   = -A1^{-1} [ (Mt / d_y Psi) d_y U + A3 d_z U ],
//     Mt      = A2 - (d_x Psi) A1 - (d_z Psi) A3.
// Second jets differentiate these generators one-sidedly along the linear
// extension in x.  Corner compatibility compares the front and pressure jets
// of the two sides on {x = 0, y = 0}; the achieved order gates the
// approximate-solution builder.
#pragma once

#include "vsheet/geometry.hpp"
#include "vsheet/linearized.hpp"
#include "vsheet/stability.hpp"

#include <array>
#include <vector>

namespace vsheet {

// x = 0 traces of the four flow components (u, v, w, p) per side, on the
// (y, z) boundary grid.
struct TraceSet {
    std::array<FieldYZ, 4> plus, minus;

    const std::array<FieldYZ, 4>& side(int s) const {
        return s >= 0 ? plus : minus;
    }
    std::array<FieldYZ, 4>& side(int s) { return s >= 0 ? plus : minus; }
};

// Trace data together with its first and second x-jets and the corner
// matching defects.
struct CompatibleData {
    TraceSet trace;
    FrontInitial front0;

    std::array<FieldYZ, 4> jet1_plus, jet1_minus; // d_x U at x = 0
    std::array<FieldYZ, 4> jet2_plus, jet2_minus; // d_x^2 U at x = 0
    FieldYZ psi1_plus, psi1_minus;                // d_x Psi at x = 0
    FieldYZ psi2_plus, psi2_minus;                // d_x^2 Psi at x = 0

    int order = 0;                       // largest k with defect[j] <= tol, j <= k
    int order_built = 0;                 // jets actually computed (1 or 2)
    std::array<double, 3> defect{};      // corner mismatch per jet order

    const std::array<FieldYZ, 4>& jet1(int s) const {
        return s >= 0 ? jet1_plus : jet1_minus;
    }
    const std::array<FieldYZ, 4>& jet2(int s) const {
        return s >= 0 ? jet2_plus : jet2_minus;
    }
    const FieldYZ& psi1(int s) const { return s >= 0 ? psi1_plus : psi1_minus; }
    const FieldYZ& psi2(int s) const { return s >= 0 ? psi2_plus : psi2_minus; }
};

// Build the jets of (U, Psi) at x = 0 from trace data.  `order_requested`
// in {1, 2} caps how many jets are formed; the one-sided x-differentiation
// of the generators uses the grid step grid.hx.  The reported `order` is the
// largest k <= order_requested with defect[j] <= match_tol for all j <= k.
// Throws DegeneracyError if any trace state is not supersonic along x and
// std::invalid_argument on mis-sized inputs.
CompatibleData build_compatible_traces(const TraceSet& trace,
                                       const FrontInitial& front0,
                                       const Grid3& grid, const GasModel& gas,
                                       int order_requested = 2,
                                       double match_tol = 1e-10);

// Approximate solution extended from compatible trace data.
struct ApproximateSolution {
    TwoPhaseState U;  // flow fields per side; v rebuilt from the front slopes
    FrontField front; // extended fronts, shared trace at y = 0
    TwoPhaseState f;  // residual source -L(U, Psi)U on {x > 0}, 0 at x = 0

    double min_slope_plus = 0.0;  // min d_y Psi^+ over the grid
    double max_slope_minus = 0.0; // max d_y Psi^- over the grid
    double trace_shift = 0.0;     // largest y = 0 correction applied
    int order = 0;                // compatibility order of the input data
};

// Quadratic-in-x extension of the traces,
//     q^a = qc + cut(x) ((q0 - qc) + x q1 + x^2/2 q2),
// with a plateau cutoff identically one on x <= 0.4 X (the inflow jets are
// kept exactly) and identically zero from 0.8 X on; qc is the constant
// far-field corner state (front reference ±y), so past 0.8 X the solution is
// exactly uniform, the residual source vanishes there bitwise, and the
// x-periodic smoothing operators see no end-to-end jump.  v is rebuilt from the
// discrete identity
// v = d_x Psi u + d_z Psi w (the front stays characteristic to round-off),
// the front trace and the pressure trace at y = 0 are shared between the
// sides, and the residual source f = -L(U, Psi)U is recorded on {x > 0}.
// Requires data.order >= 1 (std::domain_error otherwise); throws SizeError
// if d_y Psi^{a,+} < slope_bound or d_y Psi^{a,-} > -slope_bound anywhere.
ApproximateSolution build_approximate_solution(const CompatibleData& data,
                                               const Grid3& grid,
                                               const GasModel& gas,
                                               double slope_bound = 2.0 / 3.0);

// Seed data for a planar vortex sheet perturbed by a front profile psi0(z)
// sampled on the z-grid: the front is extended with the standard cutoff and
//     v^pm(y, z) = w^pm d_z psi0(z) q(y),   q(y) = chi_bridge(1/2 + y),
// while u, w, p keep their sheet values.  The plateau of q makes every
// corner defect vanish to round-off when w_r^2 == w_l^2 and hy <= 1/4, so
// the data is second-order compatible.
struct SheetSeed {
    TraceSet traces;
    FrontInitial front0;
};

SheetSeed build_sheet_seed(const PlanarVortexSheet& sheet,
                           const std::vector<double>& psi0, const Grid3& grid,
                           double slope_bound = 5.0 / 6.0);

} // namespace vsheet
