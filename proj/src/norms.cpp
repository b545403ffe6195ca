#include "vsheet/norms.hpp"

#include "vsheet/stencils.hpp"

#include <cmath>
#include <stdexcept>

namespace vsheet {

namespace {

void require_order(int s) {
    if (s < 0 || s > 3)
        throw std::domain_error("Sobolev order must be in 0..3");
}

Field3 apply_weight(const Field3& u, const Grid3& g, double gamma) {
    Field3 r = u;
    if (gamma == 0.0) return r;
    for (int i = 0; i < g.nx; ++i) {
        const double w = std::exp(-gamma * g.x(i));
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) r(i, j, k) *= w;
    }
    return r;
}

Field2 apply_weight(const Field2& u, const Grid3& g, double gamma) {
    Field2 r = u;
    if (gamma == 0.0) return r;
    for (int i = 0; i < g.nx; ++i) {
        const double w = std::exp(-gamma * g.x(i));
        for (int k = 0; k < g.nz; ++k) r(i, k) *= w;
    }
    return r;
}

// sum over all mixed partials D_x^{b1} D_y^{b2} D_z^{b3}, b1+b2+b3 <= s,
// applied in x-then-y-then-z order (the one-sided edge stencils make the
// order part of the definition)
double sobolev_sum(const Field3& w, const Grid3& g, int s, bool tangential) {
    double total = 0.0;
    Field3 gx = w;
    for (int b1 = 0; b1 <= s; ++b1) {
        if (b1 > 0) gx = dx(gx, g);
        Field3 gy = gx;
        for (int b2 = 0; b2 <= s - b1; ++b2) {
            if (b2 > 0) {
                if (tangential) break;
                gy = dy(gy, g);
            }
            Field3 gz = gy;
            for (int b3 = 0; b3 <= s - b1 - b2; ++b3) {
                if (b3 > 0) gz = dz(gz, g);
                total += l2_sq(gz, g);
            }
        }
    }
    return total;
}

} // namespace

double l2_sq(const Field3& u, const Grid3& g) {
    double t = 0.0;
    for (double v : u.a) t += v * v;
    return t * g.hx * g.hy * g.hz;
}

double l2_sq(const Field2& u, const Grid3& g) {
    double t = 0.0;
    for (double v : u.a) t += v * v;
    return t * g.hx * g.hz;
}

double weighted_norm_sq(const Field3& u, const Grid3& g, int s, double gamma) {
    require_order(s);
    return sobolev_sum(apply_weight(u, g, gamma), g, s, false);
}

double tangential_norm_sq(const Field3& u, const Grid3& g, int s, double gamma) {
    require_order(s);
    return sobolev_sum(apply_weight(u, g, gamma), g, s, true);
}

double boundary_norm_sq(const Field2& u, const Grid3& g, int s, double gamma) {
    require_order(s);
    const Field2 w = apply_weight(u, g, gamma);
    double total = 0.0;
    Field2 gx = w;
    for (int b1 = 0; b1 <= s; ++b1) {
        if (b1 > 0) gx = dx(gx, g);
        Field2 gz = gx;
        for (int b3 = 0; b3 <= s - b1; ++b3) {
            if (b3 > 0) gz = dz(gz, g);
            total += l2_sq(gz, g);
        }
    }
    return total;
}

double weighted_norm_sq(const StateField& u, const Grid3& g, int s, double gamma) {
    double t = 0.0;
    for (int m = 0; m < 4; ++m) t += weighted_norm_sq(u[m], g, s, gamma);
    return t;
}

double weighted_norm_sq(const TwoPhaseState& u, const Grid3& g, int s,
                        double gamma) {
    return weighted_norm_sq(u.plus, g, s, gamma) +
           weighted_norm_sq(u.minus, g, s, gamma);
}

double tangential_norm_sq(const TwoPhaseState& u, const Grid3& g, int s,
                          double gamma) {
    double t = 0.0;
    for (int m = 0; m < 4; ++m) {
        t += tangential_norm_sq(u.plus[m], g, s, gamma);
        t += tangential_norm_sq(u.minus[m], g, s, gamma);
    }
    return t;
}

PPTrace trace_pp(const TwoPhaseState& U, const FrontField& front, const Grid3& g) {
    PPTrace t{{Field2(g), Field2(g)}, {Field2(g), Field2(g)}};
    const Field2 ax = dx(front.psi, g), az = dz(front.psi, g);
    for (int s : {+1, -1}) {
        const StateField& Us = U.side(s);
        auto& out = (s >= 0) ? t.plus : t.minus;
        for (int i = 0; i < g.nx; ++i)
            for (int k = 0; k < g.nz; ++k) {
                out[0](i, k) = ax(i, k) * Us[0](i, 0, k) - Us[1](i, 0, k) +
                               az(i, k) * Us[2](i, 0, k);
                out[1](i, k) = Us[3](i, 0, k);
            }
    }
    return t;
}

double trace_pp_norm_sq(const PPTrace& t, const Grid3& g, double gamma) {
    double n = 0.0;
    for (int c = 0; c < 2; ++c) {
        n += boundary_norm_sq(t.plus[c], g, 0, gamma);
        n += boundary_norm_sq(t.minus[c], g, 0, gamma);
    }
    return n;
}

std::vector<EnergyRatioEntry> energy_ratio(
    const TwoPhaseState& U, const Field2& phi, const TwoPhaseState& f,
    const std::array<Field2, 3>& gbnd, const FrontField& front, const Grid3& g,
    const std::vector<double>& gammas) {
    std::vector<EnergyRatioEntry> out;
    const PPTrace tr = trace_pp(U, front, g);
    for (double gamma : gammas) {
        EnergyRatioEntry e;
        e.gamma = gamma;
        e.lhs = gamma * weighted_norm_sq(U, g, 0, gamma) +
                trace_pp_norm_sq(tr, g, gamma) +
                boundary_norm_sq(phi, g, 1, gamma);
        double rhs_g = 0.0;
        for (const Field2& row : gbnd)
            rhs_g += boundary_norm_sq(row, g, 1, gamma);
        e.rhs = tangential_norm_sq(f, g, 1, gamma) / (gamma * gamma * gamma) +
                rhs_g / (gamma * gamma);
        e.vacuous = e.rhs < 1e-28;
        e.ratio = e.vacuous ? 0.0 : e.lhs / e.rhs;
        out.push_back(e);
    }
    return out;
}

} // namespace vsheet
