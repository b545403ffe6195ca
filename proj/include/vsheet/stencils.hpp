#pragma once

// Second-order finite-difference stencils.
//
// These are the single source of truth for discrete derivatives: the
// linearized operators, the marching solver, and all residual monitors use
// exactly the same stencils, so that a marched solution satisfies the
// monitored discrete equations to round-off.
//
// Conventions:
//   x : centered in the interior, one-sided 2nd order at i = 0 and i = nx-1;
//   y : centered in the interior, one-sided 2nd order at j = 0 and j = ny-1;
//   z : periodic, always centered.

#include "vsheet/grid.hpp"

namespace vsheet {

// pointwise derivatives --------------------------------------------------

inline double dx_at(const Field3& u, const Grid3& g, int i, int j, int k) {
    if (i == 0)
        return (-3.0 * u(0, j, k) + 4.0 * u(1, j, k) - u(2, j, k)) / (2.0 * g.hx);
    if (i == g.nx - 1)
        return (3.0 * u(i, j, k) - 4.0 * u(i - 1, j, k) + u(i - 2, j, k)) / (2.0 * g.hx);
    return (u(i + 1, j, k) - u(i - 1, j, k)) / (2.0 * g.hx);
}

inline double dy_at(const Field3& u, const Grid3& g, int i, int j, int k) {
    if (j == 0)
        return (-3.0 * u(i, 0, k) + 4.0 * u(i, 1, k) - u(i, 2, k)) / (2.0 * g.hy);
    if (j == g.ny - 1)
        return (3.0 * u(i, j, k) - 4.0 * u(i, j - 1, k) + u(i, j - 2, k)) / (2.0 * g.hy);
    return (u(i, j + 1, k) - u(i, j - 1, k)) / (2.0 * g.hy);
}

inline double dz_at(const Field3& u, const Grid3& g, int i, int j, int k) {
    const int kp = g.wrap_z(k + 1), km = g.wrap_z(k - 1);
    return (u(i, j, kp) - u(i, j, km)) / (2.0 * g.hz);
}

// boundary-plane (omega) derivatives --------------------------------------

inline double dx_at(const Field2& u, const Grid3& g, int i, int k) {
    if (i == 0)
        return (-3.0 * u(0, k) + 4.0 * u(1, k) - u(2, k)) / (2.0 * g.hx);
    if (i == g.nx - 1)
        return (3.0 * u(i, k) - 4.0 * u(i - 1, k) + u(i - 2, k)) / (2.0 * g.hx);
    return (u(i + 1, k) - u(i - 1, k)) / (2.0 * g.hx);
}

inline double dz_at(const Field2& u, const Grid3& g, int i, int k) {
    const int kp = g.wrap_z(k + 1), km = g.wrap_z(k - 1);
    return (u(i, kp) - u(i, km)) / (2.0 * g.hz);
}

// whole-field derivatives --------------------------------------------------

inline Field3 dx(const Field3& u, const Grid3& g) {
    Field3 r(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) r(i, j, k) = dx_at(u, g, i, j, k);
    return r;
}

inline Field3 dy(const Field3& u, const Grid3& g) {
    Field3 r(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) r(i, j, k) = dy_at(u, g, i, j, k);
    return r;
}

inline Field3 dz(const Field3& u, const Grid3& g) {
    Field3 r(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) r(i, j, k) = dz_at(u, g, i, j, k);
    return r;
}

inline Field2 dx(const Field2& u, const Grid3& g) {
    Field2 r(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) r(i, k) = dx_at(u, g, i, k);
    return r;
}

inline Field2 dz(const Field2& u, const Grid3& g) {
    Field2 r(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) r(i, k) = dz_at(u, g, i, k);
    return r;
}

// y = 0 trace ---------------------------------------------------------------

inline Field2 trace_y0(const Field3& u, const Grid3& g) {
    Field2 r(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) r(i, k) = u(i, 0, k);
    return r;
}

// One-sided 2nd-order normal derivative at the y = 0 trace (the same stencil
// dy_at uses at j = 0); exposed separately because several boundary formulas
// need it directly on traces.
inline double dy_trace_at(const Field3& u, const Grid3& g, int i, int k) {
    return (-3.0 * u(i, 0, k) + 4.0 * u(i, 1, k) - u(i, 2, k)) / (2.0 * g.hy);
}

} // namespace vsheet
