#include "vsheet/march.hpp"

#include "vsheet/stencils.hpp"
#include "vsheet/threads.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vsheet {

namespace {

void require_field(const Field3& f, const Grid3& g, const char* what) {
    if (f.nx != g.nx || f.ny != g.ny || f.nz != g.nz) {
        std::ostringstream os;
        os << "march_linearized: " << what << " does not match the grid";
        throw std::invalid_argument(os.str());
    }
}

void require_field(const Field2& f, const Grid3& g, const char* what) {
    if (f.nx != g.nx || f.nz != g.nz) {
        std::ostringstream os;
        os << "march_linearized: " << what << " does not match the grid";
        throw std::invalid_argument(os.str());
    }
}

void require_sizes(const LinearizedProblem& prob, const Grid3& g) {
    for (int s : {+1, -1}) {
        for (int m = 0; m < 4; ++m) {
            require_field(prob.U.side(s)[m], g, "background state");
            require_field(prob.f.side(s)[m], g, "interior source");
        }
        require_field(prob.front.side(s), g, "front");
    }
    require_field(prob.front.psi, g, "front trace");
    for (int r = 0; r < 3; ++r) require_field(prob.g[r], g, "boundary source");
}

// Reject data that are visibly nonzero on the inflow plane. Plane-0 values
// are never read by the scheme; smoothed sources carry harmless round-off
// tails there, so the guard is relative, not exact.
void require_inflow_clean(const LinearizedProblem& prob, const Grid3& g,
                          double tol) {
    double at0 = 0.0, total = 0.0;
    for (int s : {+1, -1})
        for (int m = 0; m < 4; ++m) {
            const Field3& f = prob.f.side(s)[m];
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k)
                    at0 = std::max(at0, std::abs(f(0, j, k)));
            total = std::max(total, max_abs(f));
        }
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < g.nz; ++k)
            at0 = std::max(at0, std::abs(prob.g[r](0, k)));
        total = std::max(total, max_abs(prob.g[r]));
    }
    if (at0 > tol * total)
        throw std::invalid_argument(
            "march_linearized: data do not vanish on the inflow plane");
}

// tangential right-hand side  Ab Dy V + A3 Dz V + C V - f  at one node.
// Dy is dy_at (one-sided at the edges, centered inside); the march stages
// and the residual monitor share this kernel.
Vec4 tangential_rhs(const PhaseBackground& pb, const Grid3& g,
                    const GasModel& gas, const StateField& V,
                    const StateField& f, int i, int j, int k) {
    const FlowState st = pb.state_at(i, j, k);
    const FluxMatrices F = flux_matrices(st, gas);
    const double a = pb.psi_x(i, j, k), b = pb.psi_z(i, j, k);
    const double py = pb.psi_y(i, j, k);
    const Mat4 Ab = (F.A2 - a * F.A1 - b * F.A3) / py;
    const Mat4 C = zero_order_matrix(pb, gas, i, j, k);
    Vec4 Vy, Vz, Vv, fv;
    for (int m = 0; m < 4; ++m) {
        Vy[m] = dy_at(V[m], g, i, j, k);
        Vz[m] = dz_at(V[m], g, i, j, k);
        Vv[m] = V[m](i, j, k);
        fv[m] = f[m](i, j, k);
    }
    return Ab * Vy + F.A3 * Vz + C * Vv - fv;
}

struct BoundaryResiduals {
    double enforced_max = 0.0;
    double enforced_l2 = 0.0;
    double all_max = 0.0;
};

BoundaryResiduals boundary_residuals(const Background& bg,
                                     const LinearizedProblem& prob,
                                     const Grid3& g, const TwoPhaseState& V,
                                     const Field2& phi) {
    BoundaryResiduals out;
    const std::array<Field2, 3> rows =
        apply_boundary_operator(bg, V, phi, /*include_zero_order=*/false);
    double sq = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < g.nx; ++i)
            for (int k = 0; k < g.nz; ++k) {
                const double res = rows[r](i, k) - prob.g[r](i, k);
                out.all_max = std::max(out.all_max, std::abs(res));
                if (i >= 1 && i <= g.nx - 2) {
                    out.enforced_max = std::max(out.enforced_max, std::abs(res));
                    sq += res * res * g.hx * g.hz;
                }
            }
    out.enforced_l2 = std::sqrt(sq);
    return out;
}

void interior_residuals(const Background& bg, const LinearizedProblem& prob,
                        const Grid3& g, const TwoPhaseState& V,
                        MarchDiagnostics& diag) {
    double mx = 0.0, sq = 0.0;
    for (int s : {+1, -1}) {
        const PhaseBackground& pb = bg.side(s);
        const StateField& Vs = V.side(s);
        for (int i = 1; i <= g.nx - 2; ++i)
            for (int j = 1; j <= g.ny - 2; ++j)
                for (int k = 0; k < g.nz; ++k) {
                    const Vec4 rhs = tangential_rhs(pb, g, bg.gas, Vs,
                                                    prob.f.side(s), i, j, k);
                    const FluxMatrices F =
                        flux_matrices(pb.state_at(i, j, k), bg.gas);
                    Vec4 Vx;
                    for (int m = 0; m < 4; ++m)
                        Vx[m] = (Vs[m](i + 1, j, k) - Vs[m](i - 1, j, k)) /
                                (2.0 * g.hx);
                    const Vec4 R = F.A1 * Vx + rhs;
                    for (int m = 0; m < 4; ++m) {
                        mx = std::max(mx, std::abs(R[m]));
                        sq += R[m] * R[m] * g.hx * g.hy * g.hz;
                    }
                }
    }
    diag.interior_residual_max = mx;
    diag.interior_residual_l2 = std::sqrt(sq);
}

// Close the boundary rows at plane m: solve the 3x3 system for the incoming
// mode amplitudes (alpha^+, alpha^-) and the next front plane phi_{m+1}.
void close_plane(const Background& bg, const LinearizedProblem& prob,
                 const Grid3& g, int m, TwoPhaseState& V, Field2& phi,
                 double closure_tol, double& det_min, bool solve) {
    for (int k = 0; k < g.nz; ++k) {
        const BoundaryOperator op = assemble_boundary_operator(bg, m, k);
        const double a = bg.trace_x(m, k), b = bg.trace_z(m, k);
        const Vec4 ep = incoming_mode(+1, a, b);
        const Vec4 em = incoming_mode(-1, a, b);
        Eigen::Matrix3d M;
        for (int r = 0; r < 3; ++r) {
            M(r, 0) = op.trace_coeff.row(r).segment<4>(0).dot(ep);
            M(r, 1) = op.trace_coeff.row(r).segment<4>(4).dot(em);
            M(r, 2) = op.grad_coeff(r, 0) / (2.0 * g.hx);
        }
        double scale = 1.0;
        for (int r = 0; r < 3; ++r)
            scale *= M.row(r).cwiseAbs().maxCoeff();
        const double det = M.determinant();
        if (!(std::abs(det) > closure_tol * scale)) {
            std::ostringstream os;
            os << "march_linearized: boundary closure singular at plane " << m
               << ", z node " << k;
            throw ClosureError(os.str());
        }
        det_min = std::min(det_min, std::abs(det) / scale);
        if (!solve) continue;

        Eigen::Matrix<double, 8, 1> tr;
        for (int c = 0; c < 4; ++c) {
            tr[c] = V.plus[c](m, 0, k);
            tr[4 + c] = V.minus[c](m, 0, k);
        }
        const double dzphi = dz_at(phi, g, m, k);
        const Eigen::Vector3d known =
            op.grad_coeff * Eigen::Vector2d(-phi(m - 1, k) / (2.0 * g.hx), dzphi) +
            op.trace_coeff * tr;
        Eigen::Vector3d rhs;
        for (int r = 0; r < 3; ++r) rhs[r] = prob.g[r](m, k) - known[r];
        const Eigen::Vector3d sol = M.partialPivLu().solve(rhs);
        for (int c = 0; c < 4; ++c) {
            V.plus[c](m, 0, k) += sol[0] * ep[c];
            V.minus[c](m, 0, k) += sol[1] * em[c];
        }
        phi(m + 1, k) = sol[2];
    }
}

} // namespace

double max_speed_y(const FlowState& st, const GasModel& gas, double a,
                   double b, double psi_y) {
    const double c = sonic_speed(st, gas);
    const double D = st.u * st.u - c * c;
    const double e = st.v - a * st.u - b * st.w;
    const double S =
        std::sqrt((e + st.u * a) * (e + st.u * a) + D * (1.0 + b * b));
    const double lp = (e * st.u + a * c * c + c * S) / D;
    const double lm = (e * st.u + a * c * c - c * S) / D;
    const double transport = std::abs(e / st.u);
    return std::max({transport, std::abs(lp), std::abs(lm)}) / std::abs(psi_y);
}

double max_speed_z(const FlowState& st, const GasModel& gas) {
    const double c = sonic_speed(st, gas);
    const double D = st.u * st.u - c * c;
    const double S = std::sqrt(st.u * st.u + st.w * st.w - c * c);
    const double lp = (st.u * st.w + c * S) / D;
    const double lm = (st.u * st.w - c * S) / D;
    const double transport = std::abs(st.w / st.u);
    return std::max({transport, std::abs(lp), std::abs(lm)});
}

LinearizedProblem planar_problem(const PlanarVortexSheet& sheet,
                                 const Grid3& g) {
    LinearizedProblem prob(g);
    prob.sheet = sheet;
    const FlowState r = sheet.state_r(), l = sheet.state_l();
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const Vec4 vr = r.as_vec(), vl = l.as_vec();
                for (int m = 0; m < 4; ++m) {
                    prob.U.plus[m](i, j, k) = vr[m];
                    prob.U.minus[m](i, j, k) = vl[m];
                }
                prob.front.psi_plus(i, j, k) = g.y(j);
                prob.front.psi_minus(i, j, k) = -g.y(j);
            }
    prob.front.psi.fill(0.0);
    prob.front.sync_trace(g);
    return prob;
}

MarchSolution march_linearized(const LinearizedProblem& prob, const Grid3& g,
                               const MarchOptions& opt) {
    require_sizes(prob, g);
    require_inflow_clean(prob, g, opt.inflow_tol);

    if (opt.check_stability) {
        const StabilityVerdict sv = weak_stability_verdict(prob.sheet);
        if (sv.verdict != Verdict::WeaklyStable)
            throw std::domain_error(
                "march_linearized: planar part of the background is not "
                "weakly stable (" +
                to_string(sv.verdict) + ")");
    }

    const GasModel gas = prob.sheet.gas;
    const Background bg = make_background(prob.U, prob.front, g, gas);

    MarchSolution sol;
    sol.V = TwoPhaseState(g);
    sol.phi = Field2(g);

    // hyperbolicity, front slope signs, and the CFL number in one sweep
    double cfl = 0.0;
    for (int s : {+1, -1}) {
        const PhaseBackground& pb = bg.side(s);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k) {
                    const FlowState st = pb.state_at(i, j, k);
                    if (!(st.u > st.c(gas)))
                        throw DegeneracyError(
                            "march_linearized: background state is not "
                            "supersonic along x");
                    const double py = pb.psi_y(i, j, k);
                    if (!(s >= 0 ? py > 1e-8 : py < -1e-8))
                        throw DegeneracyError(
                            "march_linearized: background front slope is "
                            "degenerate");
                    const double ly = max_speed_y(st, gas, pb.psi_x(i, j, k),
                                                  pb.psi_z(i, j, k), py);
                    const double lz = max_speed_z(st, gas);
                    cfl = std::max(cfl, g.hx * (ly / g.hy + lz / g.hz));
                }
    }
    sol.diag.cfl = cfl;
    if (cfl > opt.cfl_max) {
        std::ostringstream os;
        os << "march_linearized: CFL number " << cfl << " exceeds "
           << opt.cfl_max;
        throw StepSizeError(os.str());
    }

    {
        TwoPhaseVelocity vel(g);
        for (int s : {+1, -1}) {
            VelocityField& v = vel.side(s);
            v.u = prob.U.side(s)[0];
            v.v = prob.U.side(s)[1];
            v.w = prob.U.side(s)[2];
        }
        const EikonalReport er = eikonal_residual(vel, prob.front, g);
        sol.diag.eikonal_residual =
            std::max(er.residual_max_plus, er.residual_max_minus);
        if (sol.diag.eikonal_residual > opt.eikonal_tol)
            throw std::domain_error(
                "march_linearized: background violates the front transport "
                "identity");
    }

    // determinant scan of every closure the march will perform
    for (int m = 1; m <= g.nx - 2; ++m)
        close_plane(bg, prob, g, m, sol.V, sol.phi, opt.closure_tol,
                    sol.diag.closure_det_min, /*solve=*/false);

    // march: plane-1 closure first (V_1 = 0 may still receive its boundary
    // projection), then one explicit-trapezoidal step per plane: an Euler
    // predictor lands on plane i+1, the corrector slope is evaluated there
    // (buffered so every stencil reads the finished predictor plane), and
    // the two slopes are averaged. One-step, so no undamped parasitic mode.
    close_plane(bg, prob, g, 1, sol.V, sol.phi, opt.closure_tol,
                sol.diag.closure_det_min, /*solve=*/true);
    std::vector<double> stage(static_cast<std::size_t>(g.ny) * g.nz * 4);
    for (int i = 1; i <= g.nx - 2; ++i) {
        for (int s : {+1, -1}) {
            const PhaseBackground& pb = bg.side(s);
            StateField& Vs = sol.V.side(s);
            const StateField& fs = prob.f.side(s);
            parallel_for(static_cast<std::size_t>(g.ny - 1),
                         [&](std::size_t lo, std::size_t hi) {
                for (std::size_t j = lo; j < hi; ++j)
                    for (int k = 0; k < g.nz; ++k) {
                        const int jj = static_cast<int>(j);
                        const Vec4 rhs =
                            tangential_rhs(pb, g, gas, Vs, fs, i, jj, k);
                        const FluxMatrices F =
                            flux_matrices(pb.state_at(i, jj, k), gas);
                        const Vec4 slope = F.A1.partialPivLu().solve(rhs);
                        for (int m = 0; m < 4; ++m)
                            Vs[m](i + 1, jj, k) =
                                Vs[m](i, jj, k) - g.hx * slope[m];
                    }
            });
            parallel_for(static_cast<std::size_t>(g.ny - 1),
                         [&](std::size_t lo, std::size_t hi) {
                for (std::size_t j = lo; j < hi; ++j)
                    for (int k = 0; k < g.nz; ++k) {
                        const int jj = static_cast<int>(j);
                        const Vec4 rhs = tangential_rhs(pb, g, gas, Vs, fs,
                                                        i + 1, jj, k);
                        const FluxMatrices F =
                            flux_matrices(pb.state_at(i + 1, jj, k), gas);
                        const Vec4 slope = F.A1.partialPivLu().solve(rhs);
                        double* out = &stage[(j * g.nz + k) * 4];
                        for (int m = 0; m < 4; ++m) out[m] = slope[m];
                    }
            });
            parallel_for(static_cast<std::size_t>(g.ny - 1),
                         [&](std::size_t lo, std::size_t hi) {
                for (std::size_t j = lo; j < hi; ++j)
                    for (int k = 0; k < g.nz; ++k) {
                        const int jj = static_cast<int>(j);
                        const double* k2 = &stage[(j * g.nz + k) * 4];
                        for (int m = 0; m < 4; ++m)
                            Vs[m](i + 1, jj, k) =
                                0.5 * (Vs[m](i, jj, k) + Vs[m](i + 1, jj, k)) -
                                0.5 * g.hx * k2[m];
                    }
            });
        }
        if (i + 1 <= g.nx - 2)
            close_plane(bg, prob, g, i + 1, sol.V, sol.phi, opt.closure_tol,
                        sol.diag.closure_det_min, /*solve=*/true);
    }

    interior_residuals(bg, prob, g, sol.V, sol.diag);
    const BoundaryResiduals br =
        boundary_residuals(bg, prob, g, sol.V, sol.phi);
    sol.diag.boundary_residual_max = br.enforced_max;
    sol.diag.boundary_residual_l2 = br.enforced_l2;
    sol.diag.boundary_residual_all_max = br.all_max;
    return sol;
}

MarchDiagnostics march_residuals(const LinearizedProblem& prob, const Grid3& g,
                                 const TwoPhaseState& V, const Field2& phi) {
    require_sizes(prob, g);
    const Background bg = make_background(prob.U, prob.front, g, prob.sheet.gas);
    MarchDiagnostics diag;
    interior_residuals(bg, prob, g, V, diag);
    const BoundaryResiduals br = boundary_residuals(bg, prob, g, V, phi);
    diag.boundary_residual_max = br.enforced_max;
    diag.boundary_residual_l2 = br.enforced_l2;
    diag.boundary_residual_all_max = br.all_max;
    return diag;
}

} // namespace vsheet
