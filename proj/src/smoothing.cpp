#include "vsheet/smoothing.hpp"

#include "vsheet/cutoffs.hpp"
#include "vsheet/norms.hpp"
#include "vsheet/stencils.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace vsheet {

SmoothingSchedule make_schedule(double theta0, int n_steps) {
    if (theta0 < 1.0) throw std::domain_error("smoothing scale theta0 must be >= 1");
    if (n_steps < 0) throw std::domain_error("negative schedule length");
    SmoothingSchedule s;
    s.theta0 = theta0;
    s.thetas.resize(n_steps + 1);
    s.deltas.resize(n_steps);
    for (int n = 0; n <= n_steps; ++n)
        s.thetas[n] = std::sqrt(theta0 * theta0 + n);
    for (int n = 0; n < n_steps; ++n)
        s.deltas[n] = s.thetas[n + 1] - s.thetas[n];
    return s;
}

Field3 apply_smoothing(const Field3& u, const Grid3& g, double theta) {
    Field3 out = u;
    const fftw_r2r_kind fwd[3] = {FFTW_R2HC, FFTW_REDFT00, FFTW_R2HC};
    const fftw_r2r_kind bwd[3] = {FFTW_HC2R, FFTW_REDFT00, FFTW_HC2R};
    fftw_plan pf = fftw_plan_r2r_3d(g.nx, g.ny, g.nz, out.a.data(), out.a.data(),
                                    fwd[0], fwd[1], fwd[2], FFTW_ESTIMATE);
    fftw_execute(pf);
    fftw_destroy_plan(pf);

    const double fx = 2.0 * M_PI / (g.nx * g.hx);
    const double fy = M_PI / ((g.ny - 1) * g.hy);
    const double fz = 2.0 * M_PI / (g.nz * g.hz);
    for (int i = 0; i < g.nx; ++i) {
        const double xix = fx * std::min(i, g.nx - i);
        for (int j = 0; j < g.ny; ++j) {
            const double xiy = fy * j;
            for (int k = 0; k < g.nz; ++k) {
                const double xiz = fz * std::min(k, g.nz - k);
                const double r =
                    std::sqrt(xix * xix + xiy * xiy + xiz * xiz) / theta;
                out(i, j, k) *= chi_bridge(r);
            }
        }
    }

    fftw_plan pb = fftw_plan_r2r_3d(g.nx, g.ny, g.nz, out.a.data(), out.a.data(),
                                    bwd[0], bwd[1], bwd[2], FFTW_ESTIMATE);
    fftw_execute(pb);
    fftw_destroy_plan(pb);
    const double scale =
        1.0 / (static_cast<double>(g.nx) * (2.0 * (g.ny - 1)) * g.nz);
    for (double& v : out.a) v *= scale;
    return out;
}

Field2 apply_smoothing(const Field2& u, const Grid3& g, double theta) {
    Field2 out = u;
    fftw_plan pf = fftw_plan_r2r_2d(g.nx, g.nz, out.a.data(), out.a.data(),
                                    FFTW_R2HC, FFTW_R2HC, FFTW_ESTIMATE);
    fftw_execute(pf);
    fftw_destroy_plan(pf);

    const double fx = 2.0 * M_PI / (g.nx * g.hx);
    const double fz = 2.0 * M_PI / (g.nz * g.hz);
    for (int i = 0; i < g.nx; ++i) {
        const double xix = fx * std::min(i, g.nx - i);
        for (int k = 0; k < g.nz; ++k) {
            const double xiz = fz * std::min(k, g.nz - k);
            const double r = std::sqrt(xix * xix + xiz * xiz) / theta;
            out(i, k) *= chi_bridge(r);
        }
    }

    fftw_plan pb = fftw_plan_r2r_2d(g.nx, g.nz, out.a.data(), out.a.data(),
                                    FFTW_HC2R, FFTW_HC2R, FFTW_ESTIMATE);
    fftw_execute(pb);
    fftw_destroy_plan(pb);
    const double scale = 1.0 / (static_cast<double>(g.nx) * g.nz);
    for (double& v : out.a) v *= scale;
    return out;
}

namespace {
constexpr double kThetaStep = 1e-3;
} // namespace

Field3 smoothing_dtheta(const Field3& u, const Grid3& g, double theta) {
    const double eps = kThetaStep * theta;
    Field3 hi = apply_smoothing(u, g, theta + eps);
    const Field3 lo = apply_smoothing(u, g, theta - eps);
    axpy(-1.0, lo, hi);
    scale(hi, 1.0 / (2.0 * eps));
    return hi;
}

Field2 smoothing_dtheta(const Field2& u, const Grid3& g, double theta) {
    const double eps = kThetaStep * theta;
    Field2 hi = apply_smoothing(u, g, theta + eps);
    const Field2 lo = apply_smoothing(u, g, theta - eps);
    axpy(-1.0, lo, hi);
    for (double& v : hi.a) v /= 2.0 * eps;
    return hi;
}

StateField apply_smoothing(const StateField& u, const Grid3& g, double theta) {
    StateField out(g);
    for (int m = 0; m < 4; ++m) out[m] = apply_smoothing(u[m], g, theta);
    return out;
}

TwoPhaseState apply_smoothing(const TwoPhaseState& u, const Grid3& g,
                              double theta) {
    TwoPhaseState out(g);
    out.plus = apply_smoothing(u.plus, g, theta);
    out.minus = apply_smoothing(u.minus, g, theta);
    return out;
}

TwoPhaseScalar apply_smoothing(const TwoPhaseScalar& u, const Grid3& g,
                               double theta) {
    TwoPhaseScalar out(g);
    out.plus = apply_smoothing(u.plus, g, theta);
    out.minus = apply_smoothing(u.minus, g, theta);
    return out;
}

std::vector<BoundSweepEntry> verify_bounds(
    const std::vector<TwoPhaseScalar>& samples, const Grid3& g,
    const std::vector<double>& thetas,
    const std::vector<std::pair<int, int>>& orders) {
    constexpr int kMaxOrder = 3;
    std::vector<BoundSweepEntry> out;
    for (double theta : thetas) {
        std::vector<BoundSweepEntry> block;
        for (auto [s, a] : orders) {
            BoundSweepEntry e;
            e.s = s;
            e.alpha = a;
            e.theta = theta;
            block.push_back(e);
        }
        for (const TwoPhaseScalar& pair : samples) {
            // per-side interior data
            double nu[2][kMaxOrder + 1], nS[2][kMaxOrder + 1],
                nD[2][kMaxOrder + 1], nT[2][kMaxOrder + 1];
            TwoPhaseScalar Su(g);
            for (int sd = 0; sd < 2; ++sd) {
                const Field3& u = sd == 0 ? pair.plus : pair.minus;
                Field3& S = sd == 0 ? Su.plus : Su.minus;
                S = apply_smoothing(u, g, theta);
                Field3 diff = S;
                axpy(-1.0, u, diff);
                const Field3 dS = smoothing_dtheta(u, g, theta);
                for (int q = 0; q <= kMaxOrder; ++q) {
                    nu[sd][q] = std::sqrt(weighted_norm_sq(u, g, q, 0.0));
                    nS[sd][q] = std::sqrt(weighted_norm_sq(S, g, q, 0.0));
                    nD[sd][q] = std::sqrt(weighted_norm_sq(diff, g, q, 0.0));
                    nT[sd][q] = std::sqrt(weighted_norm_sq(dS, g, q, 0.0));
                }
            }
            // boundary-difference data
            Field2 td = trace_y0(pair.plus, g), sd2 = trace_y0(Su.plus, g);
            {
                const Field2 tm = trace_y0(pair.minus, g);
                const Field2 sm = trace_y0(Su.minus, g);
                axpy(-1.0, tm, td);
                axpy(-1.0, sm, sd2);
            }
            double bu[kMaxOrder + 1], bS[kMaxOrder + 1];
            for (int q = 0; q <= kMaxOrder; ++q) {
                bu[q] = std::sqrt(boundary_norm_sq(td, g, q, 0.0));
                bS[q] = std::sqrt(boundary_norm_sq(sd2, g, q, 0.0));
            }

            std::size_t idx = 0;
            for (auto [s, a] : orders) {
                BoundSweepEntry& e = block[idx++];
                for (int sd = 0; sd < 2; ++sd) {
                    if (nu[sd][a] > 0.0) {
                        e.c_smooth = std::max(
                            e.c_smooth,
                            nS[sd][s] /
                                (std::pow(theta, std::max(s - a, 0)) * nu[sd][a]));
                        if (s <= a)
                            e.c_error = std::max(
                                e.c_error,
                                nD[sd][s] / (std::pow(theta, s - a) * nu[sd][a]));
                        e.c_dtheta = std::max(
                            e.c_dtheta,
                            nT[sd][s] / (std::pow(theta, s - a - 1) * nu[sd][a]));
                    }
                }
                if (bu[a] > 1e-14)
                    e.c_trace = std::max(
                        e.c_trace,
                        bS[s] / (std::pow(theta, std::max(s + 1 - a, 0)) * bu[a]));
            }
        }
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

} // namespace vsheet
