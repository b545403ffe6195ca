#pragma once

// Half-space grids and grid-function containers.
//
// The computational domain is the slab
//     Omega = { 0 <= x <= X,  0 <= y <= Ymax,  z in [0, Z) periodic },
// discretized with uniform nodes
//     x_i = i*hx (i = 0..nx-1),  y_j = j*hy (j = 0..ny-1),
//     z_k = k*hz (k = 0..nz-1, periodic with period Z = nz*hz).
// x is the marching ("time-like") direction; y = 0 is the physical boundary
// carrying the front trace; y = Ymax is a far-field truncation (all test data
// are compactly supported away from it).

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace vsheet {

struct Grid3 {
    int nx = 0, ny = 0, nz = 0;
    double hx = 0.0, hy = 0.0, hz = 0.0;

    Grid3() = default;
    Grid3(int nx_, int ny_, int nz_, double X, double Ymax, double Z)
        : nx(nx_), ny(ny_), nz(nz_),
          hx(X / (nx_ - 1)), hy(Ymax / (ny_ - 1)), hz(Z / nz_) {
        assert(nx >= 4 && ny >= 4 && nz >= 4);
    }

    double x(int i) const { return i * hx; }
    double y(int j) const { return j * hy; }
    double z(int k) const { return k * hz; }
    double length_x() const { return (nx - 1) * hx; }
    double length_y() const { return (ny - 1) * hy; }
    double period_z() const { return nz * hz; }

    std::size_t size() const {
        return static_cast<std::size_t>(nx) * ny * nz;
    }
    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * ny + j) * nz + k;
    }
    // Boundary-plane (y=0) index: fields on omega = {0<=x<=X, z periodic}.
    std::size_t bidx(int i, int k) const {
        return static_cast<std::size_t>(i) * nz + k;
    }
    std::size_t bsize() const { return static_cast<std::size_t>(nx) * nz; }
    int wrap_z(int k) const { return (k % nz + nz) % nz; }
};

// Scalar grid function on Omega; z-fastest storage.
struct Field3 {
    std::vector<double> a;
    int nx = 0, ny = 0, nz = 0;

    Field3() = default;
    explicit Field3(const Grid3& g)
        : a(g.size(), 0.0), nx(g.nx), ny(g.ny), nz(g.nz) {}

    double& operator()(int i, int j, int k) {
        return a[(static_cast<std::size_t>(i) * ny + j) * nz + k];
    }
    double operator()(int i, int j, int k) const {
        return a[(static_cast<std::size_t>(i) * ny + j) * nz + k];
    }
    void fill(double v) { std::fill(a.begin(), a.end(), v); }
    std::size_t size() const { return a.size(); }
};

// Scalar grid function on the boundary plane omega; z-fastest storage.
struct Field2 {
    std::vector<double> a;
    int nx = 0, nz = 0;

    Field2() = default;
    Field2(int nx_, int nz_) : a(static_cast<std::size_t>(nx_) * nz_, 0.0),
                               nx(nx_), nz(nz_) {}
    explicit Field2(const Grid3& g) : Field2(g.nx, g.nz) {}

    double& operator()(int i, int k) {
        return a[static_cast<std::size_t>(i) * nz + k];
    }
    double operator()(int i, int k) const {
        return a[static_cast<std::size_t>(i) * nz + k];
    }
    void fill(double v) { std::fill(a.begin(), a.end(), v); }
    std::size_t size() const { return a.size(); }
};

// Scalar function of (y, z) — used for x = 0 trace data and x-jets.
struct FieldYZ {
    std::vector<double> a;
    int ny = 0, nz = 0;

    FieldYZ() = default;
    FieldYZ(int ny_, int nz_) : a(static_cast<std::size_t>(ny_) * nz_, 0.0),
                                ny(ny_), nz(nz_) {}
    double& operator()(int j, int k) {
        return a[static_cast<std::size_t>(j) * nz + k];
    }
    double operator()(int j, int k) const {
        return a[static_cast<std::size_t>(j) * nz + k];
    }
    void fill(double v) { std::fill(a.begin(), a.end(), v); }
};

// Four-component grid function (one flow-perturbation field on one side).
struct StateField {
    std::array<Field3, 4> c;

    StateField() = default;
    explicit StateField(const Grid3& g) : c{Field3(g), Field3(g), Field3(g), Field3(g)} {}

    Field3& operator[](int m) { return c[m]; }
    const Field3& operator[](int m) const { return c[m]; }
    void fill(double v) { for (auto& f : c) f.fill(v); }
};

// Paired +/- fields sharing one grid.
struct TwoPhaseState {
    StateField plus, minus;
    TwoPhaseState() = default;
    explicit TwoPhaseState(const Grid3& g) : plus(g), minus(g) {}
    StateField& side(int s) { return s >= 0 ? plus : minus; }
    const StateField& side(int s) const { return s >= 0 ? plus : minus; }
    void fill(double v) { plus.fill(v); minus.fill(v); }
};

struct TwoPhaseScalar {
    Field3 plus, minus;
    TwoPhaseScalar() = default;
    explicit TwoPhaseScalar(const Grid3& g) : plus(g), minus(g) {}
    Field3& side(int s) { return s >= 0 ? plus : minus; }
    const Field3& side(int s) const { return s >= 0 ? plus : minus; }
};

// ---------------------------------------------------------------------------
// small in-place arithmetic helpers (saxpy-style), used throughout
// ---------------------------------------------------------------------------

inline void axpy(double alpha, const Field3& x, Field3& y) {
    assert(x.a.size() == y.a.size());
    for (std::size_t n = 0; n < y.a.size(); ++n) y.a[n] += alpha * x.a[n];
}
inline void axpy(double alpha, const Field2& x, Field2& y) {
    assert(x.a.size() == y.a.size());
    for (std::size_t n = 0; n < y.a.size(); ++n) y.a[n] += alpha * x.a[n];
}
inline void axpy(double alpha, const StateField& x, StateField& y) {
    for (int m = 0; m < 4; ++m) axpy(alpha, x[m], y[m]);
}
inline void axpy(double alpha, const TwoPhaseState& x, TwoPhaseState& y) {
    axpy(alpha, x.plus, y.plus);
    axpy(alpha, x.minus, y.minus);
}
inline void axpy(double alpha, const TwoPhaseScalar& x, TwoPhaseScalar& y) {
    axpy(alpha, x.plus, y.plus);
    axpy(alpha, x.minus, y.minus);
}

inline void scale(Field3& x, double alpha) {
    for (auto& v : x.a) v *= alpha;
}

inline double max_abs(const Field3& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, std::abs(v));
    return m;
}
inline double max_abs(const Field2& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, std::abs(v));
    return m;
}
inline double max_abs(const StateField& x) {
    double m = 0.0;
    for (int c = 0; c < 4; ++c) m = std::max(m, max_abs(x[c]));
    return m;
}
inline double max_abs(const TwoPhaseState& x) {
    return std::max(max_abs(x.plus), max_abs(x.minus));
}

} // namespace vsheet
