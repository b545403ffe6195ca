#include "vsheet/euler.hpp"

#include "test_util.hpp"

using namespace vsheet;

TEST_CASE("polytropic gas law round trips and sonic speed") {
    GasModel gas{1.0, 2.0}; // p = rho^2, c^2 = 2 rho = 2 sqrt(p)
    check_close(gas.density_from_pressure(1.0), 1.0, 1e-15);
    check_close(gas.density_from_pressure(0.25), 0.5, 1e-15);
    check_close(gas.pressure_from_density(0.5), 0.25, 1e-15);
    check_close(gas.sonic_speed_from_pressure(1.0), std::sqrt(2.0), 1e-14);
    check_close(gas.sonic_speed_from_pressure(0.25), 1.0, 1e-14);
    CHECK_THROWS_AS((void)gas.density_from_pressure(0.0), std::domain_error);
    CHECK_THROWS_AS((void)gas.density_from_pressure(-1.0), std::domain_error);

    GasModel air{0.7, 1.4};
    const double rho = 1.3;
    check_close(air.density_from_pressure(air.pressure_from_density(rho)), rho,
                1e-13);
    // c^2 = K gamma rho^(gamma-1)
    check_close(air.sonic_speed_from_density(rho),
                std::sqrt(0.7 * 1.4 * std::pow(rho, 0.4)), 1e-14);
}

TEST_CASE("flux matrices have the symmetric form") {
    GasModel gas{1.0, 2.0};
    FlowState st{3.0, 0.5, 2.0, 1.0}; // rho = 1, rho c^2 = gamma p = 2
    const FluxMatrices F = flux_matrices(st, gas);

    for (int d = 0; d < 3; ++d) {
        check_close(F.A1(d, d), 3.0, 1e-14);
        check_close(F.A2(d, d), 0.5, 1e-14);
        check_close(F.A3(d, d), 2.0, 1e-14);
    }
    check_close(F.A1(0, 3), 1.0, 1e-15);
    check_close(F.A1(3, 0), 1.0, 1e-15);
    check_close(F.A2(1, 3), 1.0, 1e-15);
    check_close(F.A3(2, 3), 1.0, 1e-15);
    check_close(F.A1(3, 3), 3.0 / 2.0, 1e-14);
    check_close(F.A2(3, 3), 0.5 / 2.0, 1e-14);
    check_close(F.A3(3, 3), 2.0 / 2.0, 1e-14);
    // no other off-diagonal entries
    CHECK(F.A1(1, 3) == 0.0);
    CHECK(F.A1(2, 3) == 0.0);
    CHECK(F.A2(0, 3) == 0.0);
    CHECK(F.A3(0, 3) == 0.0);
    // symmetry
    CHECK((F.A1 - F.A1.transpose()).norm() == 0.0);
    CHECK((F.A2 - F.A2.transpose()).norm() == 0.0);
    CHECK((F.A3 - F.A3.transpose()).norm() == 0.0);
}

TEST_CASE("x-hyperbolicity (A1 positive definite) is equivalent to u > c") {
    GasModel gas{1.0, 2.0};
    TestRng rng(42);
    for (int n = 0; n < 200; ++n) {
        FlowState st;
        st.p = rng.uniform(0.05, 4.0);
        const double c = gas.sonic_speed_from_pressure(st.p);
        st.u = rng.uniform(0.1, 2.5) * c; // straddles the sonic line
        st.v = rng.uniform(-3.0, 3.0);
        st.w = rng.uniform(-3.0, 3.0);
        if (std::abs(st.u - c) < 1e-6 * c) continue; // skip razor-edge draws
        CHECK(check_hyperbolic_x(st, gas) == (st.u > c));
        CHECK(st.supersonic_x(gas) == (st.u > c));
        if (st.u > c) CHECK(min_eig_A1(st, gas) > 0.0);
    }
}

TEST_CASE("flux matrix gradient matches central finite differences") {
    GasModel gas{1.0, 2.0};
    TestRng rng(7);
    const double eps = 1e-6;
    for (int n = 0; n < 10; ++n) {
        FlowState st{rng.uniform(1.0, 4.0), rng.uniform(-1.0, 1.0),
                     rng.uniform(-3.0, 3.0), rng.uniform(0.3, 3.0)};
        Vec4 dU(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        FlowState sp = st, sm = st;
        sp.u += eps * dU[0]; sp.v += eps * dU[1]; sp.w += eps * dU[2]; sp.p += eps * dU[3];
        sm.u -= eps * dU[0]; sm.v -= eps * dU[1]; sm.w -= eps * dU[2]; sm.p -= eps * dU[3];
        const FluxMatrices Fp = flux_matrices(sp, gas);
        const FluxMatrices Fm = flux_matrices(sm, gas);
        const FluxMatrices D = flux_matrix_gradient(st, gas, dU);
        CHECK(((Fp.A1 - Fm.A1) / (2 * eps) - D.A1).norm() < 1e-6);
        CHECK(((Fp.A2 - Fm.A2) / (2 * eps) - D.A2).norm() < 1e-6);
        CHECK(((Fp.A3 - Fm.A3) / (2 * eps) - D.A3).norm() < 1e-6);
    }
}

TEST_CASE("jump conditions: contact iff zero mass flux and equal pressure") {
    GasModel gas{1.0, 2.0};
    const double px = 0.3, pz = -0.2;

    // contact: v matches the front-normal combination on both sides, p equal
    FlowState Up{3.0, px * 3.0 + pz * 2.0, 2.0, 1.0};
    FlowState Um{3.0, px * 3.0 + pz * (-2.0), -2.0, 1.0};
    const JumpResidual jr = rh_residual(Up, Um, px, pz, gas);
    CHECK(jr.contact);
    check_close(jr.mass_flux_plus, 0.0, 1e-14);
    check_close(jr.mass_flux_minus, 0.0, 1e-14);
    check_close(jr.pressure_jump, 0.0, 1e-15);
    CHECK(jr.rh.norm() < 1e-13);

    // nonzero mass flux on one side breaks it
    FlowState Up2 = Up;
    Up2.v += 0.1;
    const JumpResidual jr2 = rh_residual(Up2, Um, px, pz, gas);
    CHECK(!jr2.contact);
    check_close(jr2.mass_flux_plus, -0.1 * Up2.rho(gas), 1e-13);

    // pressure jump alone also breaks it (and shows in the momentum rows)
    FlowState Um3 = Um;
    Um3.p = 1.2;
    Um3.v = px * 3.0 + pz * (-2.0); // keep zero mass flux
    const JumpResidual jr3 = rh_residual(Up, Um3, px, pz, gas);
    CHECK(!jr3.contact);
    check_close(jr3.pressure_jump, -0.2, 1e-14);
    check_close(jr3.rh[0], 0.0, 1e-14);             // mass row unaffected
    check_close(jr3.rh[1], px * (1.0 - 1.2), 1e-14); // x-momentum: psi_x [p]
    check_close(jr3.rh[2], -(1.0 - 1.2), 1e-14);     // y-momentum: -[p]
    check_close(jr3.rh[3], pz * (1.0 - 1.2), 1e-14); // z-momentum: psi_z [p]
}
