#include "vsheet/linearized.hpp"

#include <Eigen/SVD>

namespace vsheet {

namespace {

Mat4 to_mat4(const std::array<std::array<double, 4>, 4>& e) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = e[r][c];
    return m;
}

// stencil derivative of a 4-component field at a node (axis 0/1/2 = x/y/z)
Vec4 dvec(const StateField& f, const Grid3& g, int axis, int i, int j, int k) {
    Vec4 r;
    for (int m = 0; m < 4; ++m)
        r[m] = axis == 0   ? dx_at(f[m], g, i, j, k)
               : axis == 1 ? dy_at(f[m], g, i, j, k)
                           : dz_at(f[m], g, i, j, k);
    return r;
}

// apply the module's stencil along `axis` to a pointwise functor
template <class F>
double stencil_apply(F&& val, const Grid3& g, int axis, int i, int j, int k) {
    if (axis == 0) {
        if (i == 0)
            return (-3.0 * val(0, j, k) + 4.0 * val(1, j, k) - val(2, j, k)) /
                   (2.0 * g.hx);
        if (i == g.nx - 1)
            return (3.0 * val(i, j, k) - 4.0 * val(i - 1, j, k) +
                    val(i - 2, j, k)) /
                   (2.0 * g.hx);
        return (val(i + 1, j, k) - val(i - 1, j, k)) / (2.0 * g.hx);
    }
    if (axis == 1) {
        if (j == 0)
            return (-3.0 * val(i, 0, k) + 4.0 * val(i, 1, k) - val(i, 2, k)) /
                   (2.0 * g.hy);
        if (j == g.ny - 1)
            return (3.0 * val(i, j, k) - 4.0 * val(i, j - 1, k) +
                    val(i, j - 2, k)) /
                   (2.0 * g.hy);
        return (val(i, j + 1, k) - val(i, j - 1, k)) / (2.0 * g.hy);
    }
    const int kp = g.wrap_z(k + 1), km = g.wrap_z(k - 1);
    return (val(i, j, kp) - val(i, j, km)) / (2.0 * g.hz);
}

} // namespace

// ---------------------------------------------------------------------------
// backgrounds
// ---------------------------------------------------------------------------

Background make_background(const TwoPhaseState& U, const FrontField& front,
                           const Grid3& grid, const GasModel& gas) {
    Background bg;
    bg.grid = grid;
    bg.gas = gas;
    for (int s : {+1, -1}) {
        PhaseBackground& ph = bg.side(s);
        ph.U = U.side(s);
        ph.psi = front.side(s);
        ph.psi_x = dx(ph.psi, grid);
        ph.psi_y = dy(ph.psi, grid);
        ph.psi_z = dz(ph.psi, grid);
        ph.dxU = StateField(grid);
        ph.dyU = StateField(grid);
        ph.dzU = StateField(grid);
        for (int m = 0; m < 4; ++m) {
            ph.dxU[m] = dx(ph.U[m], grid);
            ph.dyU[m] = dy(ph.U[m], grid);
            ph.dzU[m] = dz(ph.U[m], grid);
        }
    }
    bg.trace_psi = trace_y0(front.psi_plus, grid);
    bg.trace_x = dx(bg.trace_psi, grid);
    bg.trace_z = dz(bg.trace_psi, grid);
    return bg;
}

Background planar_reference(const Grid3& grid, const GasModel& gas,
                            const FlowState& right, const FlowState& left) {
    TwoPhaseState U(grid);
    for (int s : {+1, -1}) {
        const FlowState& st = s >= 0 ? right : left;
        U.side(s)[0].fill(st.u);
        U.side(s)[1].fill(st.v);
        U.side(s)[2].fill(st.w);
        U.side(s)[3].fill(st.p);
    }
    FrontField front(grid);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j)
            for (int k = 0; k < grid.nz; ++k) {
                front.psi_plus(i, j, k) = grid.y(j);
                front.psi_minus(i, j, k) = -grid.y(j);
            }
    return make_background(U, front, grid, gas);
}

// ---------------------------------------------------------------------------
// pointwise coefficients
// ---------------------------------------------------------------------------

Mat4 boundary_flux_matrix(const FlowState& state, const GasModel& gas,
                          double a, double b) {
    const FluxMatrices F = flux_matrices(state, gas);
    return F.A2 - a * F.A1 - b * F.A3;
}

Mat4 transform_T(double a, double b) {
    return to_mat4(transform_t_entries<double>(a, b));
}

Mat4 transform_Tinv(double a, double b) {
    return to_mat4(transform_tinv_entries<double>(a, b));
}

Mat4 tinv_slope_derivative_a(double a, double b) {
    const double s = std::sqrt(1.0 + a * a + b * b);
    Mat4 m = Mat4::Zero();
    m(0, 2) = m(0, 3) = -1.0;
    m(1, 0) = 1.0;
    m(3, 2) = a / s;
    m(3, 3) = -a / s;
    return m;
}

Mat4 tinv_slope_derivative_b(double a, double b) {
    const double s = std::sqrt(1.0 + a * a + b * b);
    Mat4 m = Mat4::Zero();
    m(1, 1) = 1.0;
    m(2, 2) = m(2, 3) = -1.0;
    m(3, 2) = b / s;
    m(3, 3) = -b / s;
    return m;
}

Mat4 normal_scaling(double a, double b, double psi_y) {
    const double s = std::sqrt(1.0 + a * a + b * b);
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 2) = psi_y / s;
    m(3, 3) = -psi_y / s;
    return m;
}

Vec4 incoming_mode(int side, double a, double b) {
    const double s = std::sqrt(1.0 + a * a + b * b);
    return Vec4(-a, 1.0, -b, side >= 0 ? s : -s);
}

// ---------------------------------------------------------------------------
// interior operators
// ---------------------------------------------------------------------------

StateField apply_interior_operator(const PhaseBackground& bg, const Grid3& g,
                                   const GasModel& gas, const StateField& V) {
    StateField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const FluxMatrices F = flux_matrices(bg.state_at(i, j, k), gas);
                const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
                const double py = bg.psi_y(i, j, k);
                const Mat4 Ab = (F.A2 - a * F.A1 - b * F.A3) / py;
                const Vec4 r = F.A1 * dvec(V, g, 0, i, j, k) +
                               Ab * dvec(V, g, 1, i, j, k) +
                               F.A3 * dvec(V, g, 2, i, j, k);
                for (int m = 0; m < 4; ++m) out[m](i, j, k) = r[m];
            }
    return out;
}

StateField apply_zero_order(const PhaseBackground& bg, const Grid3& g,
                            const GasModel& gas, const StateField& V) {
    StateField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const FlowState st = bg.state_at(i, j, k);
                const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
                const double py = bg.psi_y(i, j, k);
                const FluxMatrices D =
                    flux_matrix_gradient(st, gas, bg.value_at(V, i, j, k));
                const Mat4 dAb = (D.A2 - a * D.A1 - b * D.A3) / py;
                const Vec4 r = D.A1 * bg.value_at(bg.dxU, i, j, k) +
                               dAb * bg.value_at(bg.dyU, i, j, k) +
                               D.A3 * bg.value_at(bg.dzU, i, j, k);
                for (int m = 0; m < 4; ++m) out[m](i, j, k) = r[m];
            }
    return out;
}

StateField apply_effective_operator(const PhaseBackground& bg, const Grid3& g,
                                    const GasModel& gas, const StateField& V) {
    StateField out = apply_interior_operator(bg, g, gas, V);
    axpy(1.0, apply_zero_order(bg, g, gas, V), out);
    return out;
}

StateField apply_full_linearized(const PhaseBackground& bg, const Grid3& g,
                                 const GasModel& gas, const StateField& V,
                                 const Field3& dPhi) {
    StateField out = apply_effective_operator(bg, g, gas, V);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const FluxMatrices F = flux_matrices(bg.state_at(i, j, k), gas);
                const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
                const double py = bg.psi_y(i, j, k);
                const Vec4 Uy = bg.value_at(bg.dyU, i, j, k);
                const Mat4 Mt = F.A2 - a * F.A1 - b * F.A3;
                const double dpx = dx_at(dPhi, g, i, j, k);
                const double dpy = dy_at(dPhi, g, i, j, k);
                const double dpz = dz_at(dPhi, g, i, j, k);
                const Vec4 r = -dpy / (py * py) * (Mt * Uy) -
                               (dpx * (F.A1 * Uy) + dpz * (F.A3 * Uy)) / py;
                for (int m = 0; m < 4; ++m) out[m](i, j, k) += r[m];
            }
    return out;
}

StateField good_unknown(const PhaseBackground& bg, const Grid3& g,
                        const StateField& V, const Field3& dPhi) {
    StateField out(g);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k)
                    out[m](i, j, k) = V[m](i, j, k) -
                                      dPhi(i, j, k) * bg.dyU[m](i, j, k) /
                                          bg.psi_y(i, j, k);
    return out;
}

Mat4 zero_order_matrix(const PhaseBackground& bg, const GasModel& gas,
                       int i, int j, int k) {
    const FlowState st = bg.state_at(i, j, k);
    const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
    const double py = bg.psi_y(i, j, k);
    const Vec4 Ux = bg.value_at(bg.dxU, i, j, k);
    const Vec4 Uy = bg.value_at(bg.dyU, i, j, k);
    const Vec4 Uz = bg.value_at(bg.dzU, i, j, k);
    Mat4 C;
    for (int col = 0; col < 4; ++col) {
        Vec4 e = Vec4::Zero();
        e[col] = 1.0;
        const FluxMatrices D = flux_matrix_gradient(st, gas, e);
        const Mat4 dAb = (D.A2 - a * D.A1 - b * D.A3) / py;
        C.col(col) = D.A1 * Ux + dAb * Uy + D.A3 * Uz;
    }
    return C;
}

// ---------------------------------------------------------------------------
// characteristic variables
// ---------------------------------------------------------------------------

StateField diagonalize(const PhaseBackground& bg, const StateField& V) {
    StateField out = V; // shape copy
    const int nx = V[0].nx, ny = V[0].ny, nz = V[0].nz;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const Mat4 T =
                    transform_T(bg.psi_x(i, j, k), bg.psi_z(i, j, k));
                const Vec4 r = T * bg.value_at(V, i, j, k);
                for (int m = 0; m < 4; ++m) out[m](i, j, k) = r[m];
            }
    return out;
}

StateField undiagonalize(const PhaseBackground& bg, const StateField& W) {
    StateField out = W; // shape copy
    const int nx = W[0].nx, ny = W[0].ny, nz = W[0].nz;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const Mat4 Ti =
                    transform_Tinv(bg.psi_x(i, j, k), bg.psi_z(i, j, k));
                const Vec4 r = Ti * bg.value_at(W, i, j, k);
                for (int m = 0; m < 4; ++m) out[m](i, j, k) = r[m];
            }
    return out;
}

StateField transform_source(const PhaseBackground& bg, const StateField& f) {
    StateField out = f; // shape copy
    const int nx = f[0].nx, ny = f[0].ny, nz = f[0].nz;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
                const Mat4 A0 = normal_scaling(a, b, bg.psi_y(i, j, k));
                const Vec4 r = A0 * (transform_T(a, b) * bg.value_at(f, i, j, k));
                for (int m = 0; m < 4; ++m) out[m](i, j, k) = r[m];
            }
    return out;
}

Mat4 transformed_flux_x(const PhaseBackground& bg, const GasModel& gas,
                        int i, int j, int k) {
    const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
    const Mat4 A0 = normal_scaling(a, b, bg.psi_y(i, j, k));
    const Mat4 A1 = flux_matrices(bg.state_at(i, j, k), gas).A1;
    return A0 * transform_T(a, b) * A1 * transform_Tinv(a, b);
}

Mat4 transformed_flux_z(const PhaseBackground& bg, const GasModel& gas,
                        int i, int j, int k) {
    const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
    const Mat4 A0 = normal_scaling(a, b, bg.psi_y(i, j, k));
    const Mat4 A3 = flux_matrices(bg.state_at(i, j, k), gas).A3;
    return A0 * transform_T(a, b) * A3 * transform_Tinv(a, b);
}

Mat4 stencil_dTinv(const PhaseBackground& bg, const Grid3& g, int axis,
                   int i, int j, int k) {
    const double da = stencil_apply(
        [&](int ii, int jj, int kk) { return bg.psi_x(ii, jj, kk); }, g, axis,
        i, j, k);
    const double db = stencil_apply(
        [&](int ii, int jj, int kk) { return bg.psi_z(ii, jj, kk); }, g, axis,
        i, j, k);
    const double ds = stencil_apply(
        [&](int ii, int jj, int kk) {
            const double av = bg.psi_x(ii, jj, kk);
            const double bv = bg.psi_z(ii, jj, kk);
            return std::sqrt(1.0 + av * av + bv * bv);
        },
        g, axis, i, j, k);
    Mat4 m = Mat4::Zero();
    m(0, 2) = m(0, 3) = -da;
    m(1, 0) = da;
    m(1, 1) = db;
    m(2, 2) = m(2, 3) = -db;
    m(3, 2) = ds;
    m(3, 3) = -ds;
    return m;
}

Mat4 transformed_zero_order(const PhaseBackground& bg, const Grid3& g,
                            const GasModel& gas, int i, int j, int k) {
    const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
    const double py = bg.psi_y(i, j, k);
    const Mat4 T = transform_T(a, b);
    const Mat4 Ti = transform_Tinv(a, b);
    const Mat4 A0 = normal_scaling(a, b, py);
    const FluxMatrices F = flux_matrices(bg.state_at(i, j, k), gas);
    const Mat4 Ab = (F.A2 - a * F.A1 - b * F.A3) / py;
    const Mat4 Cr = T * (F.A1 * stencil_dTinv(bg, g, 0, i, j, k) +
                         F.A3 * stencil_dTinv(bg, g, 2, i, j, k) +
                         Ab * stencil_dTinv(bg, g, 1, i, j, k));
    const Mat4 Cm = zero_order_matrix(bg, gas, i, j, k);
    return A0 * (Cr + T * Cm * Ti);
}

// ---------------------------------------------------------------------------
// boundary operator
// ---------------------------------------------------------------------------

BoundaryOperator assemble_boundary_operator(const Background& bg, int i, int k) {
    BoundaryOperator op;
    const double px = bg.trace_x(i, k), pz = bg.trace_z(i, k);
    op.grad_coeff << bg.plus.U[0](i, 0, k), bg.plus.U[2](i, 0, k),
        bg.minus.U[0](i, 0, k), bg.minus.U[2](i, 0, k), 0.0, 0.0;

    Vec4 vp, vm;
    for (int m = 0; m < 4; ++m) {
        vp[m] = bg.plus.dyU[m](i, 0, k) / bg.plus.psi_y(i, 0, k);
        vm[m] = bg.minus.dyU[m](i, 0, k) / bg.minus.psi_y(i, 0, k);
    }
    op.zero_coeff << px * vp[0] - vp[1] + pz * vp[2],
        px * vm[0] - vm[1] + pz * vm[2], vp[3] - vm[3];

    op.trace_coeff.setZero();
    op.trace_coeff(0, 0) = px;
    op.trace_coeff(0, 1) = -1.0;
    op.trace_coeff(0, 2) = pz;
    op.trace_coeff(1, 4) = px;
    op.trace_coeff(1, 5) = -1.0;
    op.trace_coeff(1, 6) = pz;
    op.trace_coeff(2, 3) = 1.0;
    op.trace_coeff(2, 7) = -1.0;
    return op;
}

std::array<Field2, 3> apply_boundary_operator(const Background& bg,
                                              const TwoPhaseState& V,
                                              const Field2& dphi,
                                              bool include_zero_order) {
    const Grid3& g = bg.grid;
    std::array<Field2, 3> out{Field2(g), Field2(g), Field2(g)};
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const BoundaryOperator op = assemble_boundary_operator(bg, i, k);
            const double dpx = dx_at(dphi, g, i, k);
            const double dpz = dz_at(dphi, g, i, k);
            Eigen::Matrix<double, 8, 1> tr;
            for (int m = 0; m < 4; ++m) {
                tr[m] = V.plus[m](i, 0, k);
                tr[4 + m] = V.minus[m](i, 0, k);
            }
            Eigen::Vector3d rows = op.grad_coeff * Eigen::Vector2d(dpx, dpz) +
                                   op.trace_coeff * tr;
            if (include_zero_order) rows += op.zero_coeff * dphi(i, k);
            for (int r = 0; r < 3; ++r) out[r](i, k) = rows[r];
        }
    return out;
}

std::array<Field2, 3> nonlinear_boundary_map(const Background& bg) {
    const Grid3& g = bg.grid;
    std::array<Field2, 3> out{Field2(g), Field2(g), Field2(g)};
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const double px = bg.trace_x(i, k), pz = bg.trace_z(i, k);
            out[0](i, k) = px * bg.plus.U[0](i, 0, k) - bg.plus.U[1](i, 0, k) +
                           pz * bg.plus.U[2](i, 0, k);
            out[1](i, k) = px * bg.minus.U[0](i, 0, k) -
                           bg.minus.U[1](i, 0, k) +
                           pz * bg.minus.U[2](i, 0, k);
            out[2](i, k) = bg.plus.U[3](i, 0, k) - bg.minus.U[3](i, 0, k);
        }
    return out;
}

std::array<Field2, 3> boundary_map(const TwoPhaseState& U, const Field2& psi,
                                   const Grid3& g) {
    std::array<Field2, 3> out{Field2(g), Field2(g), Field2(g)};
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const double px = dx_at(psi, g, i, k);
            const double pz = dz_at(psi, g, i, k);
            out[0](i, k) = px * U.plus[0](i, 0, k) - U.plus[1](i, 0, k) +
                           pz * U.plus[2](i, 0, k);
            out[1](i, k) = px * U.minus[0](i, 0, k) - U.minus[1](i, 0, k) +
                           pz * U.minus[2](i, 0, k);
            out[2](i, k) = U.plus[3](i, 0, k) - U.minus[3](i, 0, k);
        }
    return out;
}

StateField apply_flattened_euler(const StateField& U, const Field3& psi,
                                 const Grid3& g, const GasModel& gas) {
    StateField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                FlowState st;
                st.u = U[0](i, j, k);
                st.v = U[1](i, j, k);
                st.w = U[2](i, j, k);
                st.p = U[3](i, j, k);
                const FluxMatrices F = flux_matrices(st, gas);
                const double a = dx_at(psi, g, i, j, k);
                const double b = dz_at(psi, g, i, j, k);
                const double py = dy_at(psi, g, i, j, k);
                const Mat4 Mt = F.A2 - a * F.A1 - b * F.A3;
                const Vec4 r = F.A1 * dvec(U, g, 0, i, j, k) +
                               (Mt / py) * dvec(U, g, 1, i, j, k) +
                               F.A3 * dvec(U, g, 2, i, j, k);
                for (int m = 0; m < 4; ++m) out[m](i, j, k) = r[m];
            }
    return out;
}

// ---------------------------------------------------------------------------
// rank diagnostic
// ---------------------------------------------------------------------------

BoundaryRankReport boundary_matrix_rank(const Background& bg, double rank_tol) {
    const Grid3& g = bg.grid;
    BoundaryRankReport rep;
    for (int s : {+1, -1}) {
        const PhaseBackground& ph = bg.side(s);
        for (int j = 0; j <= 1; ++j)
            for (int i = 0; i < g.nx; ++i)
                for (int k = 0; k < g.nz; ++k) {
                    const double a = ph.psi_x(i, j, k), b = ph.psi_z(i, j, k);
                    const double py = ph.psi_y(i, j, k);
                    const Mat4 Ab =
                        boundary_flux_matrix(ph.state_at(i, j, k), bg.gas, a, b) /
                        py;
                    Eigen::JacobiSVD<Mat4> svd(Ab);
                    const Vec4 sv = svd.singularValues();
                    int rank = 0;
                    for (int m = 0; m < 4; ++m)
                        if (sv[m] > rank_tol * sv[0]) ++rank;
                    rep.min_rank = std::min(rep.min_rank, rank);
                    rep.max_rank = std::max(rep.max_rank, rank);
                    const double gap = sv[1] - sv[2];
                    rep.min_gap = std::min(rep.min_gap, gap);
                    rep.max_gap = std::max(rep.max_gap, gap);
                    rep.min_sigma2 = std::min(rep.min_sigma2, sv[1]);
                    rep.max_sigma3 = std::max(rep.max_sigma3, sv[2]);
                    rep.max_eikonal_residual =
                        std::max(rep.max_eikonal_residual,
                                 std::abs(ph.eikonal_at(i, j, k)));
                }
    }
    rep.characteristic = (rep.min_rank == 2 && rep.max_rank == 2);
    return rep;
}

// ---------------------------------------------------------------------------
// vorticity transport
// ---------------------------------------------------------------------------

VorticityPair vorticity_fields(const PhaseBackground& bg, const Grid3& g,
                               const StateField& V) {
    VorticityPair out{Field3(g), Field3(g)};
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const double py = bg.psi_y(i, j, k);
                const double ax = bg.psi_x(i, j, k) / py;
                const double az = bg.psi_z(i, j, k) / py;
                const double dyv = dy_at(V[1], g, i, j, k);
                out.xi(i, j, k) = dx_at(V[1], g, i, j, k) - ax * dyv -
                                  dy_at(V[0], g, i, j, k) / py;
                out.zeta(i, j, k) = dz_at(V[1], g, i, j, k) - az * dyv -
                                    dy_at(V[2], g, i, j, k) / py;
            }
    return out;
}

VorticityPair vorticity_transport_residual(const PhaseBackground& bg,
                                           const Grid3& g, const GasModel& gas,
                                           const StateField& V,
                                           const StateField& f) {
    // coefficient fields of the tangential frame and of the drift T
    Field3 ax(g), az(g), ey(g), bt(g), ct(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const double py = bg.psi_y(i, j, k);
                ax(i, j, k) = bg.psi_x(i, j, k) / py;
                az(i, j, k) = bg.psi_z(i, j, k) / py;
                ey(i, j, k) = 1.0 / py;
                const double rho =
                    gas.density_from_pressure(bg.U[3](i, j, k));
                bt(i, j, k) = rho * bg.U[0](i, j, k);
                ct(i, j, k) = rho * bg.U[2](i, j, k);
            }

    StateField ft = f;
    axpy(-1.0, apply_zero_order(bg, g, gas, V), ft);
    const VorticityPair vort = vorticity_fields(bg, g, V);

    VorticityPair out{Field3(g), Field3(g)};
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const double rho =
                    gas.density_from_pressure(bg.U[3](i, j, k));
                const double ub = bg.U[0](i, j, k), wb = bg.U[2](i, j, k);
                const double axv = ax(i, j, k), azv = az(i, j, k);
                const double eyv = ey(i, j, k);

                auto X = [&](const Field3& q) {
                    return dx_at(q, g, i, j, k) - axv * dy_at(q, g, i, j, k);
                };
                auto Y = [&](const Field3& q) {
                    return eyv * dy_at(q, g, i, j, k);
                };
                auto Z = [&](const Field3& q) {
                    return dz_at(q, g, i, j, k) - azv * dy_at(q, g, i, j, k);
                };
                auto T = [&](const Field3& q) {
                    return rho * (ub * dx_at(q, g, i, j, k) +
                                  wb * dz_at(q, g, i, j, k));
                };

                const double dxv = dx_at(V[1], g, i, j, k);
                const double dyv = dy_at(V[1], g, i, j, k);
                const double dzv = dz_at(V[1], g, i, j, k);
                const double R1 = -(X(bt) * dxv + X(ct) * dzv + T(ax) * dyv) +
                                  (Y(bt) * dx_at(V[0], g, i, j, k) +
                                   Y(ct) * dz_at(V[0], g, i, j, k) -
                                   T(ey) * dy_at(V[0], g, i, j, k)) -
                                  (X(ey) + eyv * dy_at(ax, g, i, j, k)) *
                                      dy_at(V[3], g, i, j, k);
                const double R2 = -(Z(bt) * dxv + Z(ct) * dzv + T(az) * dyv) +
                                  (Y(bt) * dx_at(V[2], g, i, j, k) +
                                   Y(ct) * dz_at(V[2], g, i, j, k) -
                                   T(ey) * dy_at(V[2], g, i, j, k)) -
                                  (Z(ey) + eyv * dy_at(az, g, i, j, k)) *
                                      dy_at(V[3], g, i, j, k);

                out.xi(i, j, k) = T(vort.xi) - (X(ft[1]) - Y(ft[0]) + R1);
                out.zeta(i, j, k) = T(vort.zeta) - (Z(ft[1]) - Y(ft[2]) + R2);
            }
    return out;
}

// ---------------------------------------------------------------------------
// normal-derivative reconstruction
// ---------------------------------------------------------------------------

StateField reconstruct_normal_derivatives(const PhaseBackground& bg,
                                          const Grid3& g, const GasModel& gas,
                                          const StateField& W,
                                          const Field3& xi, const Field3& zeta,
                                          const StateField& F) {
    // v reconstructed from W: (Tinv W)_2 = a W1 + b W2 + W3 + W4
    Field3 vI(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k)
                vI(i, j, k) = bg.psi_x(i, j, k) * W[0](i, j, k) +
                              bg.psi_z(i, j, k) * W[1](i, j, k) +
                              W[2](i, j, k) + W[3](i, j, k);

    StateField out(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const double a = bg.psi_x(i, j, k), b = bg.psi_z(i, j, k);
                const double py = bg.psi_y(i, j, k);
                const double s2 = 1.0 + a * a + b * b;

                // rows 1,2: the vorticity solve
                const double dya = dy_at(bg.psi_x, g, i, j, k);
                const double dyb = dy_at(bg.psi_z, g, i, j, k);
                const double W34 = W[2](i, j, k) + W[3](i, j, k);
                const double g1 = -dya * W34;
                const double g2 = dya * W[0](i, j, k) + dyb * W[1](i, j, k);
                const double g3 = -dyb * W34;
                const double dxv = dx_at(vI, g, i, j, k) - xi(i, j, k);
                const double dzv = dz_at(vI, g, i, j, k) - zeta(i, j, k);
                out[0](i, j, k) =
                    (py * ((1.0 + b * b) * dxv - a * b * dzv) -
                     (1.0 + b * b) * g1 - a * g2 + a * b * g3) /
                    s2;
                out[1](i, j, k) =
                    (py * ((1.0 + a * a) * dzv - a * b * dxv) + a * b * g1 -
                     b * g2 - (1.0 + a * a) * g3) /
                    s2;

                // rows 3,4: the transformed problem
                const Mat4 A1r = transformed_flux_x(bg, gas, i, j, k);
                const Mat4 A3r = transformed_flux_z(bg, gas, i, j, k);
                const Mat4 A0C = transformed_zero_order(bg, g, gas, i, j, k);
                const Vec4 rhs = bg.value_at(F, i, j, k) -
                                 A1r * dvec(W, g, 0, i, j, k) -
                                 A3r * dvec(W, g, 2, i, j, k) -
                                 A0C * bg.value_at(W, i, j, k);
                out[2](i, j, k) = rhs[2];
                out[3](i, j, k) = rhs[3];
            }
    return out;
}

} // namespace vsheet
