#include "vsheet/norms.hpp"

#include "vsheet/stencils.hpp"

#include "test_util.hpp"

using namespace vsheet;

namespace {

Grid3 toy_grid() { return Grid3(9, 7, 8, 1.0, 1.2, 2.0); }

Field3 toy_field(const Grid3& g) {
    Field3 u(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k)
                u(i, j, k) = 0.1 * (1.0 + 0.3 * g.x(i)) *
                             (1.0 + 0.25 * g.y(j) * g.y(j)) *
                             (2.0 + std::sin(M_PI * g.z(k)));
    return u;
}

} // namespace

TEST_CASE("weighted Sobolev norms match frozen quadrature values") {
    const Grid3 g = toy_grid();
    const Field3 u = toy_field(g);
    check_close(weighted_norm_sq(u, g, 0, 4.0), 0.033659439294563775);
    check_close(weighted_norm_sq(u, g, 1, 4.0), 0.5153676676734638);
    check_close(weighted_norm_sq(u, g, 2, 4.0), 5.513205293768716);
    check_close(weighted_norm_sq(u, g, 3, 4.0), 34.48754344863464);
    check_close(weighted_norm_sq(u, g, 1, 8.0), 1.179318991741379);
    check_close(tangential_norm_sq(u, g, 2, 4.0), 5.455199456396397);

    Field2 tr(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) tr(i, k) = u(i, 0, k);
    check_close(boundary_norm_sq(tr, g, 1, 4.0), 0.2829412501544486);
    check_close(boundary_norm_sq(tr, g, 2, 8.0), 16.87624335691756);

    // the tangential norm drops exactly the y-derivative terms
    CHECK(tangential_norm_sq(u, g, 2, 4.0) < weighted_norm_sq(u, g, 2, 4.0));
}

TEST_CASE("weight-first definition: e^{gamma x} data cancel the weight") {
    const Grid3 g = toy_grid();
    const Field3 v = toy_field(g);
    for (double gamma : {4.0, 8.0, 16.0}) {
        Field3 u = v;
        for (int i = 0; i < g.nx; ++i) {
            const double w = std::exp(gamma * g.x(i));
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k) u(i, j, k) *= w;
        }
        for (int s = 0; s <= 3; ++s)
            check_close(weighted_norm_sq(u, g, s, gamma),
                        weighted_norm_sq(v, g, s, 0.0), 1e-12);
    }
}

TEST_CASE("separable closed form for a pure z-mode at order zero") {
    const Grid3 g = toy_grid();
    Field3 u(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k)
                u(i, j, k) = std::sin(2.0 * M_PI * g.z(k) / g.period_z());
    const double gamma = 4.0;
    double sx = 0.0;
    for (int i = 0; i < g.nx; ++i) sx += std::exp(-2.0 * gamma * g.x(i)) * g.hx;
    const double want = sx * (g.ny * g.hy) * (0.5 * g.period_z());
    check_close(weighted_norm_sq(u, g, 0, gamma), want, 1e-12);

    Field3 zero(g);
    CHECK(weighted_norm_sq(zero, g, 2, 4.0) == 0.0);
    CHECK_THROWS_AS((void)weighted_norm_sq(u, g, 4, 4.0), std::domain_error);
    CHECK_THROWS_AS((void)weighted_norm_sq(u, g, -1, 4.0), std::domain_error);
}

TEST_CASE("plain L2 sums use node weights") {
    const Grid3 g = toy_grid();
    Field3 u(g);
    u.fill(0.7);
    check_close(l2_sq(u, g), 0.49 * g.hx * g.hy * g.hz * g.size(), 1e-13);
    Field2 b(g);
    b.fill(-1.5);
    check_close(l2_sq(b, g), 2.25 * g.hx * g.hz * g.bsize(), 1e-13);
}

TEST_CASE("boundary-trace projection") {
    const Grid3 g = toy_grid();
    TwoPhaseState U(g);
    TestRng rng(404);
    for (int s : {+1, -1})
        for (int m = 0; m < 4; ++m)
            for (auto& v : U.side(s)[m].a) v = rng.uniform(-1.0, 1.0);

    // flat front: P U = (-U_2, U_4)
    FrontField flat(g);
    const PPTrace t0 = trace_pp(U, flat, g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            check_close(t0.plus[0](i, k), -U.plus[1](i, 0, k), 1e-14);
            check_close(t0.plus[1](i, k), U.plus[3](i, 0, k), 1e-14);
            check_close(t0.minus[0](i, k), -U.minus[1](i, 0, k), 1e-14);
            check_close(t0.minus[1](i, k), U.minus[3](i, 0, k), 1e-14);
        }

    // curved trace: slopes enter the first component (interior z nodes, where
    // the polynomial profile is resolved exactly by the stencils)
    FrontField front(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k)
            front.psi(i, k) = 0.04 * (g.x(i) * g.z(k) - 0.3 * g.z(k) * g.z(k));
    front.sync_trace(g);
    const PPTrace t1 = trace_pp(U, front, g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz - 1; ++k) {
            const double ax = 0.04 * g.z(k);
            const double az = 0.04 * g.x(i) - 0.024 * g.z(k);
            check_close(t1.plus[0](i, k),
                        ax * U.plus[0](i, 0, k) - U.plus[1](i, 0, k) +
                            az * U.plus[2](i, 0, k),
                        1e-13);
        }

    TwoPhaseState zero(g);
    const PPTrace tz = trace_pp(zero, front, g);
    CHECK(max_abs(tz.plus[0]) == 0.0);
    CHECK(max_abs(tz.minus[1]) == 0.0);
    CHECK(trace_pp_norm_sq(tz, g, 4.0) == 0.0);
}

TEST_CASE("energy-ratio monitor: decomposition, gammas, vacuous guard") {
    const Grid3 g = toy_grid();
    TwoPhaseState U(g), f(g);
    Field2 phi(g);
    std::array<Field2, 3> gb{Field2(g), Field2(g), Field2(g)};
    FrontField front(g);
    TestRng rng(11);
    for (int s : {+1, -1})
        for (int m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < U.side(s)[m].a.size(); ++n) {
                U.side(s)[m].a[n] = rng.uniform(-1.0, 1.0);
                f.side(s)[m].a[n] = rng.uniform(-1.0, 1.0);
            }
    for (auto& v : phi.a) v = rng.uniform(-1.0, 1.0);
    for (auto& row : gb)
        for (auto& v : row.a) v = rng.uniform(-1.0, 1.0);

    const std::vector<double> gammas{4.0, 8.0, 16.0};
    const auto table = energy_ratio(U, phi, f, gb, front, g, gammas);
    REQUIRE(table.size() == 3);
    for (int t = 0; t < 3; ++t) {
        const auto& e = table[t];
        CHECK(e.gamma == gammas[t]);
        CHECK_FALSE(e.vacuous);
        CHECK(e.ratio > 0.0);
        const double lhs = e.gamma * weighted_norm_sq(U, g, 0, e.gamma) +
                           trace_pp_norm_sq(trace_pp(U, front, g), g, e.gamma) +
                           boundary_norm_sq(phi, g, 1, e.gamma);
        double rg = 0.0;
        for (const auto& row : gb) rg += boundary_norm_sq(row, g, 1, e.gamma);
        const double rhs =
            tangential_norm_sq(f, g, 1, e.gamma) / std::pow(e.gamma, 3) +
            rg / (e.gamma * e.gamma);
        check_close(e.lhs, lhs, 1e-12);
        check_close(e.rhs, rhs, 1e-12);
        check_close(e.ratio, lhs / rhs, 1e-12);
    }

    // zero data: guarded, not a division by zero
    TwoPhaseState z3(g);
    Field2 z2(g);
    std::array<Field2, 3> zg{Field2(g), Field2(g), Field2(g)};
    const auto vac = energy_ratio(z3, z2, z3, zg, front, g, {4.0});
    REQUIRE(vac.size() == 1);
    CHECK(vac[0].vacuous);
    CHECK(vac[0].ratio == 0.0);
}
