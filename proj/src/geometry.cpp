#include "vsheet/geometry.hpp"

#include "vsheet/stencils.hpp"
#include "vsheet/threads.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vsheet {

// ---------------------------------------------------------------------------
// initial extension
// ---------------------------------------------------------------------------

FrontInitial extend_front_initial(const std::vector<double>& psi0,
                                  const Grid3& g, double slope_bound) {
    FrontInitial out{FieldYZ(g.ny, g.nz), FieldYZ(g.ny, g.nz)};
    if (static_cast<int>(psi0.size()) != g.nz)
        throw SizeError("extend_front_initial: psi0 size != nz");

    for (int j = 0; j < g.ny; ++j) {
        const double chi = front_cutoff(g.y(j));
        for (int k = 0; k < g.nz; ++k) {
            out.plus(j, k) = g.y(j) + chi * psi0[k];
            out.minus(j, k) = -g.y(j) + chi * psi0[k];
        }
    }

    // discrete slope check (one-sided 2nd order at the edges, centered inside)
    auto dy_col = [&](const FieldYZ& f, int j, int k) {
        if (j == 0) return (-3.0 * f(0, k) + 4.0 * f(1, k) - f(2, k)) / (2.0 * g.hy);
        if (j == g.ny - 1)
            return (3.0 * f(j, k) - 4.0 * f(j - 1, k) + f(j - 2, k)) / (2.0 * g.hy);
        return (f(j + 1, k) - f(j - 1, k)) / (2.0 * g.hy);
    };
    for (int j = 0; j < g.ny; ++j)
        for (int k = 0; k < g.nz; ++k) {
            if (dy_col(out.plus, j, k) < slope_bound ||
                dy_col(out.minus, j, k) > -slope_bound) {
                std::ostringstream msg;
                msg << "extend_front_initial: slope bound " << slope_bound
                    << " violated at (j,k)=(" << j << "," << k
                    << "); initial profile too large";
                throw SizeError(msg.str());
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// transport march
// ---------------------------------------------------------------------------

namespace {

// generalized minmod slope (theta = 2): second-order TVD-style limiting
double limited_slope(double dm, double dp) {
    if (dm * dp <= 0.0) return 0.0;
    const double central = 0.5 * (dm + dp);
    const double lim = 2.0 * std::min(std::abs(dm), std::abs(dp));
    return std::copysign(std::min(std::abs(central), lim), central);
}

// upwind-limited d_z at node k of a z-line (periodic)
double dz_upwind(const std::vector<double>& q, int k, int nz, double hz, double wind) {
    auto at = [&](int kk) { return q[(kk % nz + nz) % nz]; };
    const double dm = at(k) - at(k - 1);
    const double dp = at(k + 1) - at(k);
    if (wind >= 0.0) {
        // information from the left: d_z ~ (q_k - q_{k-1})/hz + slope correction
        const double dmm = at(k - 1) - at(k - 2);
        const double sk = limited_slope(dm, dp);
        const double skm = limited_slope(dmm, dm);
        return (dm + 0.5 * (sk - skm)) / hz;
    }
    const double dpp = at(k + 2) - at(k + 1);
    const double sk = limited_slope(dm, dp);
    const double skp = limited_slope(dp, dpp);
    return (dp - 0.5 * (skp - sk)) / hz;
}

} // namespace

FrontField solve_eikonal(const TwoPhaseVelocity& vel, const FrontInitial& init,
                         const Grid3& g, double kappa0, double cfl_max,
                         EikonalReport* report) {
    FrontField front(g);
    front.kappa0 = kappa0;
    EikonalReport rep;

    // CFL scan: the transport characteristic speed in z is w/u
    double cfl = 0.0;
    for (int s : {+1, -1}) {
        const VelocityField& V = vel.side(s);
        for (std::size_t n = 0; n < V.u.a.size(); ++n) {
            const double u = V.u.a[n];
            if (u <= 0.0)
                throw StepSizeError("solve_eikonal: requires u > 0 (x time-like)");
            cfl = std::max(cfl, std::abs(V.w.a[n] / u) * g.hx / g.hz);
        }
    }
    rep.cfl_used = cfl;
    if (cfl > cfl_max) {
        std::ostringstream msg;
        msg << "solve_eikonal: CFL " << cfl << " exceeds " << cfl_max;
        throw StepSizeError(msg.str());
    }

    // per-side, per-y-slice SSP-RK3 march in x
    for (int s : {+1, -1}) {
        const VelocityField& V = vel.side(s);
        Field3& Psi = front.side(s);
        const FieldYZ& P0 = s >= 0 ? init.plus : init.minus;
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) Psi(0, j, k) = P0(j, k);

        parallel_for(g.ny, [&](std::size_t jlo, std::size_t jhi) {
            std::vector<double> q(g.nz), q1(g.nz), q2(g.nz), rhs(g.nz);
            for (std::size_t j = jlo; j < jhi; ++j) {
                for (int k = 0; k < g.nz; ++k) q[k] = Psi(0, static_cast<int>(j), k);
                for (int i = 0; i < g.nx - 1; ++i) {
                    // coefficient slices at x_i, x_{i+1}, and midpoint average
                    auto L = [&](const std::vector<double>& f, int ia, int ib,
                                 double wa, double wb, std::vector<double>& out) {
                        for (int k = 0; k < g.nz; ++k) {
                            const double u = wa * V.u(ia, (int)j, k) + wb * V.u(ib, (int)j, k);
                            const double v = wa * V.v(ia, (int)j, k) + wb * V.v(ib, (int)j, k);
                            const double w = wa * V.w(ia, (int)j, k) + wb * V.w(ib, (int)j, k);
                            out[k] = (v - w * dz_upwind(f, k, g.nz, g.hz, w / u)) / u;
                        }
                    };
                    // SSP-RK3: stages at x_i, x_i + hx, x_i + hx/2
                    L(q, i, i, 1.0, 0.0, rhs);
                    for (int k = 0; k < g.nz; ++k) q1[k] = q[k] + g.hx * rhs[k];
                    L(q1, i + 1, i + 1, 1.0, 0.0, rhs);
                    for (int k = 0; k < g.nz; ++k)
                        q2[k] = 0.75 * q[k] + 0.25 * (q1[k] + g.hx * rhs[k]);
                    L(q2, i, i + 1, 0.5, 0.5, rhs);
                    for (int k = 0; k < g.nz; ++k)
                        q[k] = q[k] / 3.0 + 2.0 / 3.0 * (q2[k] + g.hx * rhs[k]);
                    for (int k = 0; k < g.nz; ++k) Psi(i + 1, static_cast<int>(j), k) = q[k];
                }
            }
        });
    }

    // shared trace: average the two marched y=0 slices, record the mismatch
    double mism = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            mism = std::max(mism, std::abs(front.psi_plus(i, 0, k) - front.psi_minus(i, 0, k)));
            front.psi(i, k) = 0.5 * (front.psi_plus(i, 0, k) + front.psi_minus(i, 0, k));
        }
    rep.trace_mismatch = mism;
    front.sync_trace(g);

    // slope bounds
    rep.min_slope_plus = std::numeric_limits<double>::infinity();
    rep.max_slope_minus = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                rep.min_slope_plus = std::min(rep.min_slope_plus,
                                              dy_at(front.psi_plus, g, i, j, k));
                rep.max_slope_minus = std::max(rep.max_slope_minus,
                                               dy_at(front.psi_minus, g, i, j, k));
            }
    if (rep.min_slope_plus < kappa0 || rep.max_slope_minus > -kappa0) {
        std::ostringstream msg;
        msg << "solve_eikonal: slope bound kappa0=" << kappa0
            << " reached (min d_y Psi+ = " << rep.min_slope_plus
            << ", max d_y Psi- = " << rep.max_slope_minus << ")";
        throw DegeneracyError(msg.str());
    }

    if (report) {
        EikonalReport res = eikonal_residual(vel, front, g);
        rep.residual_l2_plus = res.residual_l2_plus;
        rep.residual_l2_minus = res.residual_l2_minus;
        rep.residual_max_plus = res.residual_max_plus;
        rep.residual_max_minus = res.residual_max_minus;
        *report = rep;
    }
    return front;
}

EikonalReport eikonal_residual(const TwoPhaseVelocity& vel, const FrontField& front,
                               const Grid3& g, Field3* res_plus, Field3* res_minus) {
    EikonalReport rep;
    const double vol = g.hx * g.hy * g.hz;
    for (int s : {+1, -1}) {
        const VelocityField& V = vel.side(s);
        const Field3& Psi = front.side(s);
        Field3 local(g);
        double l2 = 0.0, mx = 0.0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k) {
                    const double r = V.u(i, j, k) * dx_at(Psi, g, i, j, k) -
                                     V.v(i, j, k) +
                                     V.w(i, j, k) * dz_at(Psi, g, i, j, k);
                    local(i, j, k) = r;
                    l2 += r * r * vol;
                    mx = std::max(mx, std::abs(r));
                }
        if (s >= 0) {
            rep.residual_l2_plus = std::sqrt(l2);
            rep.residual_max_plus = mx;
            if (res_plus) *res_plus = local;
        } else {
            rep.residual_l2_minus = std::sqrt(l2);
            rep.residual_max_minus = mx;
            if (res_minus) *res_minus = local;
        }
    }
    return rep;
}

double characteristic_solution(const std::function<double(double, double)>& psi0,
                               double u, double v, double w,
                               double x, double y, double z) {
    return psi0(y, z - (w / u) * x) + (v / u) * x;
}

Field3 extend_boundary(const Field2& g2, const Grid3& g) {
    Field3 out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double chi = front_cutoff(g.y(j));
            if (chi == 0.0) continue;
            for (int k = 0; k < g.nz; ++k) out(i, j, k) = chi * g2(i, k);
        }
    return out;
}

} // namespace vsheet
