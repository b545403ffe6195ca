#include "vsheet/jets.hpp"

#include "vsheet/stencils.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vsheet {

namespace {

using Traces = std::array<FieldYZ, 4>;

// trace-grid stencils: one-sided y edges, periodic z (same weights as the
// volume stencils)
FieldYZ dy_yz(const FieldYZ& f, double hy) {
    FieldYZ out(f.ny, f.nz);
    for (int j = 0; j < f.ny; ++j)
        for (int k = 0; k < f.nz; ++k) {
            if (j == 0)
                out(j, k) =
                    (-3.0 * f(0, k) + 4.0 * f(1, k) - f(2, k)) / (2.0 * hy);
            else if (j == f.ny - 1)
                out(j, k) = (3.0 * f(j, k) - 4.0 * f(j - 1, k) + f(j - 2, k)) /
                            (2.0 * hy);
            else
                out(j, k) = (f(j + 1, k) - f(j - 1, k)) / (2.0 * hy);
        }
    return out;
}

FieldYZ dz_yz(const FieldYZ& f, double hz) {
    FieldYZ out(f.ny, f.nz);
    for (int j = 0; j < f.ny; ++j)
        for (int k = 0; k < f.nz; ++k) {
            const int kp = (k + 1) % f.nz, km = (k + f.nz - 1) % f.nz;
            out(j, k) = (f(j, kp) - f(j, km)) / (2.0 * hz);
        }
    return out;
}

// d_x Psi = (v - d_z Psi w) / u on the trace grid
FieldYZ psi_generator(const Traces& U, const FieldYZ& Psi, const Grid3& g) {
    FieldYZ out(g.ny, g.nz);
    const FieldYZ Pz = dz_yz(Psi, g.hz);
    for (int j = 0; j < g.ny; ++j)
        for (int k = 0; k < g.nz; ++k)
            out(j, k) = (U[1](j, k) - Pz(j, k) * U[2](j, k)) / U[0](j, k);
    return out;
}

// d_x U = -A1^{-1} [ (Mt / d_y Psi) d_y U + A3 d_z U ]
Traces generator(const Traces& U, const FieldYZ& Psi, const FieldYZ& psix,
                 const Grid3& g, const GasModel& gas) {
    Traces out{FieldYZ(g.ny, g.nz), FieldYZ(g.ny, g.nz), FieldYZ(g.ny, g.nz),
               FieldYZ(g.ny, g.nz)};
    const FieldYZ Py = dy_yz(Psi, g.hy);
    const FieldYZ Pz = dz_yz(Psi, g.hz);
    Traces Uy, Uz;
    for (int m = 0; m < 4; ++m) {
        Uy[m] = dy_yz(U[m], g.hy);
        Uz[m] = dz_yz(U[m], g.hz);
    }
    for (int j = 0; j < g.ny; ++j)
        for (int k = 0; k < g.nz; ++k) {
            const FlowState st{U[0](j, k), U[1](j, k), U[2](j, k),
                               U[3](j, k)};
            if (!check_hyperbolic_x(st, gas))
                throw DegeneracyError(
                    "inflow trace state is not supersonic along x");
            const FluxMatrices F = flux_matrices(st, gas);
            const Mat4 Mt = F.A2 - psix(j, k) * F.A1 - Pz(j, k) * F.A3;
            Vec4 uy, uz;
            for (int m = 0; m < 4; ++m) {
                uy[m] = Uy[m](j, k);
                uz[m] = Uz[m](j, k);
            }
            const Vec4 rhs = Mt * uy / Py(j, k) + F.A3 * uz;
            const Vec4 jet = -F.A1.partialPivLu().solve(rhs);
            for (int m = 0; m < 4; ++m) out[m](j, k) = jet[m];
        }
    return out;
}

void check_sizes(const FieldYZ& f, const Grid3& g, const char* what) {
    if (f.ny != g.ny || f.nz != g.nz)
        throw std::invalid_argument(std::string(what) +
                                    " does not match the (y, z) grid");
}

double corner_defect(const FieldYZ& a, const FieldYZ& b) {
    double d = 0.0;
    for (int k = 0; k < a.nz; ++k)
        d = std::max(d, std::abs(a(0, k) - b(0, k)));
    return d;
}

} // namespace

CompatibleData build_compatible_traces(const TraceSet& trace,
                                       const FrontInitial& front0,
                                       const Grid3& g, const GasModel& gas,
                                       int order_requested, double match_tol) {
    if (order_requested < 1 || order_requested > 2)
        throw std::invalid_argument("jet order must be 1 or 2");
    for (int s : {+1, -1})
        for (int m = 0; m < 4; ++m)
            check_sizes(trace.side(s)[m], g, "trace component");
    check_sizes(front0.plus, g, "front trace");
    check_sizes(front0.minus, g, "front trace");

    CompatibleData out;
    out.trace = trace;
    out.front0 = front0;
    out.order_built = order_requested;

    for (int s : {+1, -1}) {
        const Traces& U0 = trace.side(s);
        const FieldYZ& P0 = s >= 0 ? front0.plus : front0.minus;

        FieldYZ psi1 = psi_generator(U0, P0, g);
        Traces U1 = generator(U0, P0, psi1, g, gas);

        FieldYZ psi2(g.ny, g.nz);
        Traces U2{FieldYZ(g.ny, g.nz), FieldYZ(g.ny, g.nz),
                  FieldYZ(g.ny, g.nz), FieldYZ(g.ny, g.nz)};
        if (order_requested >= 2) {
            // one-sided x-derivative of the generators along the linear
            // extension, step hx
            std::array<FieldYZ, 3> gP;
            std::array<Traces, 3> gU;
            for (int m = 0; m < 3; ++m) {
                const double xm = m * g.hx;
                Traces Um = U0;
                for (int c = 0; c < 4; ++c)
                    for (std::size_t n = 0; n < Um[c].a.size(); ++n)
                        Um[c].a[n] += xm * U1[c].a[n];
                FieldYZ Pm = P0;
                for (std::size_t n = 0; n < Pm.a.size(); ++n)
                    Pm.a[n] += xm * psi1.a[n];
                gP[m] = psi_generator(Um, Pm, g);
                gU[m] = generator(Um, Pm, gP[m], g, gas);
            }
            for (std::size_t n = 0; n < psi2.a.size(); ++n) {
                psi2.a[n] = (-3.0 * gP[0].a[n] + 4.0 * gP[1].a[n] -
                             gP[2].a[n]) /
                            (2.0 * g.hx);
                for (int c = 0; c < 4; ++c)
                    U2[c].a[n] = (-3.0 * gU[0][c].a[n] + 4.0 * gU[1][c].a[n] -
                                  gU[2][c].a[n]) /
                                 (2.0 * g.hx);
            }
        }

        if (s >= 0) {
            out.psi1_plus = std::move(psi1);
            out.psi2_plus = std::move(psi2);
            out.jet1_plus = std::move(U1);
            out.jet2_plus = std::move(U2);
        } else {
            out.psi1_minus = std::move(psi1);
            out.psi2_minus = std::move(psi2);
            out.jet1_minus = std::move(U1);
            out.jet2_minus = std::move(U2);
        }
    }

    out.defect[0] = std::max(corner_defect(front0.plus, front0.minus),
                             corner_defect(trace.plus[3], trace.minus[3]));
    out.defect[1] =
        std::max(corner_defect(out.psi1_plus, out.psi1_minus),
                 corner_defect(out.jet1_plus[3], out.jet1_minus[3]));
    if (order_requested >= 2)
        out.defect[2] =
            std::max(corner_defect(out.psi2_plus, out.psi2_minus),
                     corner_defect(out.jet2_plus[3], out.jet2_minus[3]));

    int order = -1;
    for (int j = 0; j <= order_requested; ++j) {
        if (out.defect[j] > match_tol) break;
        order = j;
    }
    out.order = order;
    return out;
}

ApproximateSolution build_approximate_solution(const CompatibleData& data,
                                               const Grid3& g,
                                               const GasModel& gas,
                                               double slope_bound,
                                               double window_start,
                                               double window_end) {
    if (data.order < 1)
        throw std::domain_error(
            "approximate solution needs first-order compatible trace data");
    if (!(0.0 < window_start && window_start < window_end && window_end < 1.0))
        throw std::invalid_argument(
            "cutoff window fractions must satisfy 0 < start < end < 1");

    ApproximateSolution out;
    out.U = TwoPhaseState(g);
    out.front = FrontField(g);
    out.f = TwoPhaseState(g);
    out.order = data.order;

    const double X = g.x(g.nx - 1);
    // plateau cutoff: identically one on x <= window_start X, identically
    // zero from window_end X on.  The zero margin before x = X leaves
    // several planes on which the solution is exactly the uniform far-field
    // state, so the residual source vanishes there bitwise and the
    // x-periodic smoothing operators see no end-to-end jump at all.
    auto cut = [=](double x) {
        return plateau(x, window_start * X, window_end * X);
    };

    for (int s : {+1, -1}) {
        const Traces& U0 = data.trace.side(s);
        const Traces& U1 = data.jet1(s);
        const Traces& U2 = data.jet2(s);
        const FieldYZ& P0 = s >= 0 ? data.front0.plus : data.front0.minus;
        const FieldYZ& psi1 = data.psi1(s);
        const FieldYZ& psi2 = data.psi2(s);

        // The cutoff bridges the WHOLE deviation from a constant far-field
        // state (front ±y) to zero, not just the x-jet terms: any constant
        // state with a straight front solves the flattened system exactly, so
        // the residual source vanishes at x = X as well as at x = 0 and the
        // x-periodic smoothing operators see no end-to-end jump.
        std::array<double, 3> cref{};
        {
            int q = 0;
            for (int m : {0, 2, 3}) cref[q++] = U0[m](g.ny - 1, 0);
        }

        Field3& Psi = out.front.side(s);
        StateField& U = out.U.side(s);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            const double c = cut(x);
            for (int j = 0; j < g.ny; ++j) {
                const double ys = s >= 0 ? g.y(j) : -g.y(j);
                for (int k = 0; k < g.nz; ++k) {
                    if (c == 1.0) {
                        // plateau region: keep the plain jet extension bitwise
                        Psi(i, j, k) = P0(j, k) + x * psi1(j, k) +
                                       0.5 * x * x * psi2(j, k);
                        for (int m : {0, 2, 3})
                            U[m](i, j, k) = U0[m](j, k) + x * U1[m](j, k) +
                                            0.5 * x * x * U2[m](j, k);
                    } else {
                        Psi(i, j, k) =
                            ys + c * ((P0(j, k) - ys) + x * psi1(j, k) +
                                      0.5 * x * x * psi2(j, k));
                        int q = 0;
                        for (int m : {0, 2, 3}) {
                            U[m](i, j, k) =
                                cref[q] +
                                c * ((U0[m](j, k) - cref[q]) +
                                     x * U1[m](j, k) +
                                     0.5 * x * x * U2[m](j, k));
                            ++q;
                        }
                    }
                }
            }
        }
    }

    // shared front and pressure traces at y = 0 (plus-side values win; the
    // correction applied to the minus side is bounded by the corner defects)
    double shift = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            shift = std::max(shift, std::abs(out.front.psi_plus(i, 0, k) -
                                             out.front.psi_minus(i, 0, k)));
            shift = std::max(shift, std::abs(out.U.plus[3](i, 0, k) -
                                             out.U.minus[3](i, 0, k)));
            out.front.psi(i, k) = out.front.psi_plus(i, 0, k);
            out.U.minus[3](i, 0, k) = out.U.plus[3](i, 0, k);
        }
    out.front.sync_trace(g);
    out.front.kappa0 = slope_bound;
    out.trace_shift = shift;

    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                mn = std::min(mn, dy_at(out.front.psi_plus, g, i, j, k));
                mx = std::max(mx, dy_at(out.front.psi_minus, g, i, j, k));
            }
    out.min_slope_plus = mn;
    out.max_slope_minus = mx;
    if (mn < slope_bound || mx > -slope_bound)
        throw SizeError("approximate front slope leaves the admissible range");

    // v from the discrete characteristic identity, then the residual source
    for (int s : {+1, -1}) {
        const Field3& Psi = out.front.side(s);
        StateField& U = out.U.side(s);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k)
                    U[1](i, j, k) = dx_at(Psi, g, i, j, k) * U[0](i, j, k) +
                                    dz_at(Psi, g, i, j, k) * U[2](i, j, k);

        const StateField r = apply_flattened_euler(U, Psi, g, gas);
        StateField& f = out.f.side(s);
        for (int m = 0; m < 4; ++m)
            for (int i = 1; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j)
                    for (int k = 0; k < g.nz; ++k)
                        f[m](i, j, k) = -r[m](i, j, k);
    }
    return out;
}

SheetSeed build_sheet_seed(const PlanarVortexSheet& sheet,
                           const std::vector<double>& psi0, const Grid3& g,
                           double slope_bound) {
    SheetSeed out;
    out.front0 = extend_front_initial(psi0, g, slope_bound);

    std::vector<double> dpsi(g.nz);
    for (int k = 0; k < g.nz; ++k) {
        const int kp = (k + 1) % g.nz, km = (k + g.nz - 1) % g.nz;
        dpsi[k] = (psi0[kp] - psi0[km]) / (2.0 * g.hz);
    }

    for (int s : {+1, -1}) {
        Traces& tr = out.traces.side(s);
        for (int m = 0; m < 4; ++m) tr[m] = FieldYZ(g.ny, g.nz);
        const FlowState st = s >= 0 ? sheet.state_r() : sheet.state_l();
        for (int j = 0; j < g.ny; ++j) {
            const double q = chi_bridge(0.5 + g.y(j));
            for (int k = 0; k < g.nz; ++k) {
                tr[0](j, k) = st.u;
                tr[1](j, k) = st.w * dpsi[k] * q;
                tr[2](j, k) = st.w;
                tr[3](j, k) = st.p;
            }
        }
    }
    return out;
}

} // namespace vsheet
