#include "vsheet/euler.hpp"

#include <cmath>

namespace vsheet {

// ---------------------------------------------------------------------------
// gas model
// ---------------------------------------------------------------------------

double GasModel::pressure_from_density(double rho) const {
    return K * std::pow(rho, gamma);
}

double GasModel::density_from_pressure(double p) const {
    if (p <= 0.0) throw std::domain_error("density_from_pressure: p <= 0");
    return std::pow(p / K, 1.0 / gamma);
}

double GasModel::sonic_speed_from_density(double rho) const {
    if (rho <= 0.0) throw std::domain_error("sonic_speed_from_density: rho <= 0");
    return std::sqrt(K * gamma * std::pow(rho, gamma - 1.0));
}

double GasModel::sonic_speed_from_pressure(double p) const {
    return sonic_speed_from_density(density_from_pressure(p));
}

double sonic_speed(const FlowState& state, const GasModel& gas) {
    if (state.p <= 0.0) throw std::domain_error("sonic_speed: p <= 0");
    return gas.sonic_speed_from_pressure(state.p);
}

// ---------------------------------------------------------------------------
// flux matrices
// ---------------------------------------------------------------------------

FluxMatrices flux_matrices(const FlowState& s, const GasModel& gas) {
    const double rho = s.rho(gas);
    const double c2 = gas.gamma * s.p / rho; // c^2 = gamma p / rho (polytropic)
    const double rc2 = rho * c2;             // = gamma p

    FluxMatrices F;
    F.A1.setZero();
    F.A2.setZero();
    F.A3.setZero();

    for (int d = 0; d < 3; ++d) {
        F.A1(d, d) = rho * s.u;
        F.A2(d, d) = rho * s.v;
        F.A3(d, d) = rho * s.w;
    }
    F.A1(0, 3) = F.A1(3, 0) = 1.0;
    F.A2(1, 3) = F.A2(3, 1) = 1.0;
    F.A3(2, 3) = F.A3(3, 2) = 1.0;
    F.A1(3, 3) = s.u / rc2;
    F.A2(3, 3) = s.v / rc2;
    F.A3(3, 3) = s.w / rc2;
    return F;
}

FluxMatrices flux_matrix_gradient(const FlowState& s, const GasModel& gas,
                                  const Vec4& dU) {
    const double rho = s.rho(gas);
    const double c2 = gas.gamma * s.p / rho;
    const double rc2 = rho * c2; // = gamma p
    // d(rho)/dp = 1/c^2; d(rho q)/d(U) = rho dq + q/c^2 dp;
    // d(q/(gamma p)) = dq/(gamma p) - q dp/(gamma p^2).
    const double du = dU[0], dv = dU[1], dw = dU[2], dp = dU[3];

    const double d_ru = rho * du + s.u / c2 * dp;
    const double d_rv = rho * dv + s.v / c2 * dp;
    const double d_rw = rho * dw + s.w / c2 * dp;

    auto d_q_over_gp = [&](double q, double dq) {
        return dq / rc2 - q * dp / (rc2 * s.p);
    };

    FluxMatrices D;
    D.A1.setZero();
    D.A2.setZero();
    D.A3.setZero();
    for (int d = 0; d < 3; ++d) {
        D.A1(d, d) = d_ru;
        D.A2(d, d) = d_rv;
        D.A3(d, d) = d_rw;
    }
    D.A1(3, 3) = d_q_over_gp(s.u, du);
    D.A2(3, 3) = d_q_over_gp(s.v, dv);
    D.A3(3, 3) = d_q_over_gp(s.w, dw);
    return D;
}

// ---------------------------------------------------------------------------
// hyperbolicity
// ---------------------------------------------------------------------------

double min_eig_A1(const FlowState& state, const GasModel& gas) {
    const Mat4 A1 = flux_matrices(state, gas).A1;
    Eigen::SelfAdjointEigenSolver<Mat4> es(A1);
    return es.eigenvalues().minCoeff();
}

bool check_hyperbolic_x(const FlowState& state, const GasModel& gas,
                        double eig_tol_rel) {
    const Mat4 A1 = flux_matrices(state, gas).A1;
    Eigen::SelfAdjointEigenSolver<Mat4> es(A1);
    const double tol = eig_tol_rel * A1.norm();
    return es.eigenvalues().minCoeff() > tol;
}

// ---------------------------------------------------------------------------
// jump conditions
// ---------------------------------------------------------------------------

namespace {
// front-normal flux vector (mass, x-, y-, z-momentum) for one state:
// psi_x (rho u, rho u^2 + p, rho u v, rho u w)
//      - (rho v, rho u v, rho v^2 + p, rho v w)
// + psi_z (rho w, rho u w, rho v w, rho w^2 + p)
Vec4 front_flux(const FlowState& s, double psi_x, double psi_z, double rho) {
    const double m = rho * (psi_x * s.u - s.v + psi_z * s.w);
    Vec4 f;
    f[0] = m;
    f[1] = s.u * m + psi_x * s.p;
    f[2] = s.v * m - s.p;
    f[3] = s.w * m + psi_z * s.p;
    return f;
}
} // namespace

JumpResidual rh_residual(const FlowState& Up, const FlowState& Um,
                         double psi_x, double psi_z, const GasModel& gas,
                         double contact_tol) {
    const double rho_p = Up.rho(gas), rho_m = Um.rho(gas);
    JumpResidual r;
    r.rh = front_flux(Up, psi_x, psi_z, rho_p) - front_flux(Um, psi_x, psi_z, rho_m);
    r.mass_flux_plus = rho_p * (psi_x * Up.u - Up.v + psi_z * Up.w);
    r.mass_flux_minus = rho_m * (psi_x * Um.u - Um.v + psi_z * Um.w);
    r.pressure_jump = Up.p - Um.p;
    r.contact = std::abs(r.mass_flux_plus) <= contact_tol &&
                std::abs(r.mass_flux_minus) <= contact_tol &&
                std::abs(r.pressure_jump) <= contact_tol;
    return r;
}

} // namespace vsheet
