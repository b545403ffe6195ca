#include "vsheet/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vsheet {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::WeaklyStable: return "WeaklyStable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::ParallelUnstable: return "ParallelUnstable";
        case Verdict::NotSupersonic: return "NotSupersonic";
    }
    return "Unknown";
}

bool check_supersonic(const PlanarVortexSheet& sheet) {
    const double c = sheet.c_bar();
    return sheet.u_r > c && sheet.u_l > c;
}

void theta_bounds(const PlanarVortexSheet& sheet, double& theta_l, double& theta_r) {
    if (sheet.u_r <= 0.0 || sheet.u_l <= 0.0)
        throw std::domain_error("theta_bounds: requires u_r > 0 and u_l > 0");
    const double ar = std::atan(sheet.w_r / sheet.u_r);
    const double al = std::atan(sheet.w_l / sheet.u_l);
    theta_r = std::max(ar, al);
    theta_l = std::min(ar, al);
}

PlanarVortexSheet rotate_sheet(const PlanarVortexSheet& sheet, double angle) {
    // rotate each tangential velocity vector by -angle so that a vector at
    // direction `angle` maps onto the u-axis
    const double ca = std::cos(angle), sa = std::sin(angle);
    PlanarVortexSheet r = sheet;
    r.u_r = ca * sheet.u_r + sa * sheet.w_r;
    r.w_r = -sa * sheet.u_r + ca * sheet.w_r;
    r.u_l = ca * sheet.u_l + sa * sheet.w_l;
    r.w_l = -sa * sheet.u_l + ca * sheet.w_l;
    return r;
}

double normalizing_rotation(const PlanarVortexSheet& sheet) {
    const double ar = std::atan2(sheet.w_r, sheet.u_r);
    const double al = std::atan2(sheet.w_l, sheet.u_l);
    return 0.5 * (ar + al);
}

double g_of_theta(const PlanarVortexSheet& sheet, double theta) {
    const double c2 = sheet.c_bar() * sheet.c_bar();
    const double st = std::sin(theta), ct = std::cos(theta);
    const double dl = sheet.u_l * st - sheet.w_l * ct;
    const double dr = sheet.u_r * st - sheet.w_r * ct;
    return c2 / (dl * dl) + c2 / (dr * dr);
}

void min_theta_scan(const PlanarVortexSheet& sheet, int n_grid,
                    double& min_value, double& argmin_theta) {
    double tl, tr;
    theta_bounds(sheet, tl, tr);
    if (!(tl < tr))
        throw std::domain_error("min_theta_scan: empty interval (parallel fields)");
    if (n_grid < 8) n_grid = 8;

    // g blows up at both endpoints (the rotated tangential speed of one side
    // vanishes there), so the minimum is interior; clip by a relative eps.
    const double eps = 1e-9 * (tr - tl);
    const double a = tl + eps, b = tr - eps;

    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    const double dt = (b - a) / (n_grid - 1);
    for (int i = 0; i < n_grid; ++i) {
        const double v = g_of_theta(sheet, a + i * dt);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    // golden-section polish on the bracket around the best coarse node
    double lo = a + std::max(0, best - 1) * dt;
    double hi = a + std::min(n_grid - 1, best + 1) * dt;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = g_of_theta(sheet, x1), f2 = g_of_theta(sheet, x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * (tr - tl); ++it) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = g_of_theta(sheet, x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = g_of_theta(sheet, x2);
        }
    }
    argmin_theta = 0.5 * (lo + hi);
    min_value = std::min({best_val, g_of_theta(sheet, argmin_theta), f1, f2});
}

StabilityVerdict weak_stability_verdict(const PlanarVortexSheet& sheet) {
    StabilityVerdict out;
    const double c = sheet.c_bar();
    const double c2 = c * c;
    const double rel_tol = 1e-10;

    auto near_margin = [&](double margin, double scale) {
        return std::abs(margin) <= rel_tol * std::max(scale, 1e-300);
    };

    // (a) supersonic in x (strict)
    out.flags.supersonic = sheet.u_r > c && sheet.u_l > c;
    out.marginal = out.marginal || near_margin(sheet.u_r - c, c) ||
                   near_margin(sheet.u_l - c, c);
    if (!out.flags.supersonic) {
        out.verdict = Verdict::NotSupersonic;
        return out;
    }

    // (b) nondegenerate, non-parallel tangential fields
    const double cross = sheet.u_r * sheet.w_l - sheet.u_l * sheet.w_r;
    const double scale2 = sheet.u_r * sheet.u_r + sheet.w_r * sheet.w_r +
                          sheet.u_l * sheet.u_l + sheet.w_l * sheet.w_l;
    out.flags.nonparallel = std::abs(cross) > rel_tol * scale2;
    if (!out.flags.nonparallel) {
        out.verdict = Verdict::ParallelUnstable;
        return out;
    }

    // (c) bisecting rotation, then the sign normalization w_r w_l < 0
    out.rotation_angle = normalizing_rotation(sheet);
    const PlanarVortexSheet rs = rotate_sheet(sheet, out.rotation_angle);
    out.flags.sign_normalized = rs.w_r * rs.w_l < 0.0;

    // (d) three stability lines in the rotated frame
    const double vel_sum = c2 / (rs.u_r * rs.u_r) + c2 / (rs.u_l * rs.u_l);
    out.flags.velocity_line = vel_sum < 1.0;
    out.marginal = out.marginal || near_margin(1.0 - vel_sum, 1.0);

    out.flags.shear_line = rs.w_r * rs.w_r > c2 && rs.w_l * rs.w_l > c2;
    out.marginal = out.marginal || near_margin(rs.w_r * rs.w_r - c2, c2) ||
                   near_margin(rs.w_l * rs.w_l - c2, c2);

    theta_bounds(rs, out.theta_l, out.theta_r);
    min_theta_scan(rs, 1024, out.min_value, out.argmin_theta);
    out.flags.min_line = out.min_value < 1.0;
    out.marginal = out.marginal || near_margin(1.0 - out.min_value, 1.0);

    // (e) non-resonance (strict inequality "!=", tested with relative tol)
    const double lhs = std::pow(rs.u_l * rs.w_r - rs.u_r * rs.w_l, 2);
    const double rhs = 2.0 * std::pow(c * rs.u_l + c * rs.u_r, 2) +
                       2.0 * std::pow(c * rs.w_l + c * rs.w_r, 2);
    out.flags.nonresonance = std::abs(lhs - rhs) > rel_tol * std::max(lhs, rhs);
    out.marginal = out.marginal || !out.flags.nonresonance ||
                   near_margin(lhs - rhs, std::max(lhs, rhs));

    out.verdict = out.flags.all() ? Verdict::WeaklyStable : Verdict::Unstable;
    return out;
}

} // namespace vsheet
