#include "vsheet/stability.hpp"

#include "test_util.hpp"

using namespace vsheet;

// All sheets below use the gas (K, gamma) = (1, 2) with common pressure
// p = 1/4, so rho = 1/2 and the sonic speed is exactly c = 1. Frozen values
// come from tools/oracles/stability_oracle.py (dense theta scan, mpmath).
namespace {
PlanarVortexSheet sheet(double ur, double wr, double ul, double wl,
                        double p = 0.25) {
    PlanarVortexSheet s;
    s.u_r = ur; s.w_r = wr; s.u_l = ul; s.w_l = wl;
    s.p_bar = p;
    s.gas = GasModel{1.0, 2.0};
    return s;
}
} // namespace

TEST_CASE("reference sheet (3,2)/(3,-2): weakly stable, min g = 1/2 at 0") {
    const PlanarVortexSheet s = sheet(3.0, 2.0, 3.0, -2.0);
    check_close(s.c_bar(), 1.0, 1e-14);
    CHECK(check_supersonic(s));

    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::WeaklyStable);
    CHECK(v.flags.all());
    CHECK(!v.marginal);
    check_close(v.rotation_angle, 0.0, 1e-14);
    check_close(v.min_value, 0.5, 1e-9);
    check_close(v.argmin_theta, 0.0, 1e-6);
    check_close(v.theta_l, -0.5880026035475675, 1e-12);
    check_close(v.theta_r, 0.5880026035475675, 1e-12);
    CHECK(to_string(v.verdict) == "WeaklyStable");
}

TEST_CASE("same-sign shear (3,2)/(3,1): bisecting rotation, unstable") {
    const PlanarVortexSheet s = sheet(3.0, 2.0, 3.0, 1.0);
    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::Unstable);
    check_close(v.rotation_angle, 0.4548765789721049, 1e-12);
    check_close(v.min_value, 9.98526304105083, 1e-9);
    check_close(v.argmin_theta, 0.005817341010263886, 1e-6);
    check_close(v.theta_l, -0.1331260245754627, 1e-12);
    check_close(v.theta_r, 0.1331260245754627, 1e-12);
    // after the rotation the jump is sign-normalized but too weak
    CHECK(v.flags.sign_normalized);
    CHECK(v.flags.velocity_line);
    CHECK(!v.flags.shear_line);
    CHECK(!v.flags.min_line);
    CHECK(v.flags.nonresonance);
}

TEST_CASE("subsonic side (0.9,2)/(3,-2): not supersonic") {
    const PlanarVortexSheet s = sheet(0.9, 2.0, 3.0, -2.0);
    CHECK(!check_supersonic(s));
    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::NotSupersonic);
    CHECK(!v.flags.supersonic);
    CHECK(to_string(v.verdict) == "NotSupersonic");
}

TEST_CASE("weak shear (4,0.5)/(4,-0.5): min g = 8, unstable") {
    const PlanarVortexSheet s = sheet(4.0, 0.5, 4.0, -0.5);
    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::Unstable);
    check_close(v.rotation_angle, 0.0, 1e-14);
    check_close(v.min_value, 8.0, 1e-9);
    check_close(v.argmin_theta, 0.0, 1e-6);
    check_close(v.theta_l, -0.12435499454676144, 1e-12);
    check_close(v.theta_r, 0.12435499454676144, 1e-12);
    CHECK(v.flags.velocity_line); // 1/16 + 1/16 < 1
    CHECK(!v.flags.shear_line);   // 0.25 < 1
    CHECK(!v.flags.min_line);     // 8 > 1
    CHECK(v.flags.nonresonance);  // 16 != 128
}

TEST_CASE("asymmetric sheet (4,3)/(3.5,-2.5): weakly stable") {
    const PlanarVortexSheet s = sheet(4.0, 3.0, 3.5, -2.5);
    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::WeaklyStable);
    CHECK(v.flags.all());
    check_close(v.rotation_angle, 0.011625811405231458, 1e-12);
    check_close(v.min_value, 0.2678777876748274, 1e-9);
    check_close(v.argmin_theta, 0.031140710218893992, 1e-6);
    check_close(v.theta_l, -0.6318752973880529, 1e-12);
    check_close(v.theta_r, 0.6318752973880529, 1e-12);
}

TEST_CASE("theta bounds on an unrotated example") {
    const PlanarVortexSheet s = sheet(1.0, 0.0, 1.0, 1.0, 0.0625);
    double tl = 0.0, tr = 0.0;
    theta_bounds(s, tl, tr);
    check_close(tl, 0.0, 1e-15);
    check_close(tr, 0.7853981633974483, 1e-15); // atan(1)
    CHECK_THROWS_AS(theta_bounds(sheet(-1.0, 0.0, 1.0, 1.0), tl, tr),
                    std::domain_error);
}

TEST_CASE("parallel tangential fields are flagged unstable") {
    const PlanarVortexSheet s = sheet(3.0, 2.0, 6.0, 4.0);
    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::ParallelUnstable);
    CHECK(!v.flags.nonparallel);
    CHECK(to_string(v.verdict) == "ParallelUnstable");
}

TEST_CASE("sonic boundary case is marginal") {
    // u_r = c exactly: strict supersonic test fails and the marginal flag set
    const PlanarVortexSheet s = sheet(1.0, 2.0, 3.0, -2.0);
    const StabilityVerdict v = weak_stability_verdict(s);
    CHECK(v.verdict == Verdict::NotSupersonic);
    CHECK(v.marginal);
}

TEST_CASE("verdict quantities are 0-homogeneous in (u, w, c)") {
    const PlanarVortexSheet s1 = sheet(3.0, 2.0, 3.0, -2.0, 0.25); // c = 1
    const PlanarVortexSheet s2 = sheet(6.0, 4.0, 6.0, -4.0, 4.0);  // c = 2
    check_close(s2.c_bar(), 2.0, 1e-14);
    const StabilityVerdict v1 = weak_stability_verdict(s1);
    const StabilityVerdict v2 = weak_stability_verdict(s2);
    CHECK(v1.verdict == v2.verdict);
    check_close(v1.min_value, v2.min_value, 1e-11);
    check_close(v1.theta_l, v2.theta_l, 1e-12);
    check_close(v1.theta_r, v2.theta_r, 1e-12);
    check_close(v1.rotation_angle, v2.rotation_angle, 1e-12);
}

TEST_CASE("rotation is rigid and the normalizing angle bisects") {
    TestRng rng(11);
    for (int n = 0; n < 20; ++n) {
        const PlanarVortexSheet s =
            sheet(rng.uniform(1.5, 5.0), rng.uniform(-3.0, 3.0),
                  rng.uniform(1.5, 5.0), rng.uniform(-3.0, 3.0));
        const double ang = rng.uniform(-0.4, 0.4);
        const PlanarVortexSheet r = rotate_sheet(s, ang);
        check_close(r.u_r * r.u_r + r.w_r * r.w_r,
                    s.u_r * s.u_r + s.w_r * s.w_r, 1e-12);
        check_close(r.u_l * r.u_l + r.w_l * r.w_l,
                    s.u_l * s.u_l + s.w_l * s.w_l, 1e-12);
        // after applying the normalizing rotation, the two direction angles
        // are symmetric about the u-axis
        const PlanarVortexSheet ns = rotate_sheet(s, normalizing_rotation(s));
        check_close(std::atan2(ns.w_r, ns.u_r), -std::atan2(ns.w_l, ns.u_l),
                    1e-12);
    }
}

TEST_CASE("g(theta) matches its definition at sample angles") {
    const PlanarVortexSheet s = sheet(3.0, 2.0, 3.0, -2.0);
    for (double t : {-0.3, 0.0, 0.2, 0.5}) {
        const double dl = s.u_l * std::sin(t) - s.w_l * std::cos(t);
        const double dr = s.u_r * std::sin(t) - s.w_r * std::cos(t);
        check_close(g_of_theta(s, t), 1.0 / (dl * dl) + 1.0 / (dr * dr), 1e-13);
    }
    // the reference minimum: g(0) = c^2/w_l^2 + c^2/w_r^2 = 1/4 + 1/4
    check_close(g_of_theta(s, 0.0), 0.5, 1e-14);
}
