#!/usr/bin/env python3
"""Independent oracle for the discrete weighted Sobolev norms.

Mirrors the module's definition exactly: multiply by the exponential weight
first, then apply centered/one-sided second-order stencils for every mixed
partial up to the requested order, and sum cell-weighted squares.
Also freezes the tangential-only variant (L2 in y of the (x,z)-Sobolev norm)
and the boundary-trace norm on {y=0}.
"""

import json

import numpy as np

NX, NY, NZ = 9, 7, 8
XL, YL, ZL = 1.0, 1.2, 2.0
HX, HY, HZ = XL / (NX - 1), YL / (NY - 1), ZL / NZ


def d_axis(F, h, axis, periodic):
    G = np.empty_like(F)
    sl = [slice(None)] * F.ndim

    def ix(i):
        s = sl.copy()
        s[axis] = i
        return tuple(s)

    if periodic:
        return (np.roll(F, -1, axis) - np.roll(F, 1, axis)) / (2 * h)
    inner = sl.copy()
    inner[axis] = slice(1, -1)
    up = sl.copy()
    up[axis] = slice(2, None)
    lo = sl.copy()
    lo[axis] = slice(None, -2)
    G[tuple(inner)] = (F[tuple(up)] - F[tuple(lo)]) / (2 * h)
    G[ix(0)] = (-3 * F[ix(0)] + 4 * F[ix(1)] - F[ix(2)]) / (2 * h)
    G[ix(-1)] = (3 * F[ix(-1)] - 4 * F[ix(-2)] + F[ix(-3)]) / (2 * h)
    return G


def dx(F):
    return d_axis(F, HX, 0, False)


def dy(F):
    return d_axis(F, HY, 1, False)


def dz(F):
    return d_axis(F, HZ, 2, True)


def l2sq(F, cell):
    return float(np.sum(F * F) * cell)


def weighted_norm_sq(u, s, gamma, tangential_only=False):
    g = np.exp(-gamma * (np.arange(NX) * HX))[:, None, None] * u
    total = 0.0
    for b1 in range(s + 1):
        for b2 in range(s + 1 - b1):
            for b3 in range(s + 1 - b1 - b2):
                if tangential_only and b2 > 0:
                    continue
                D = g
                for _ in range(b1):
                    D = dx(D)
                for _ in range(b2):
                    D = dy(D)
                for _ in range(b3):
                    D = dz(D)
                total += l2sq(D, HX * HY * HZ)
    return total


def boundary_norm_sq(u2d, s, gamma):
    g = np.exp(-gamma * (np.arange(NX) * HX))[:, None] * u2d
    total = 0.0
    for b1 in range(s + 1):
        for b3 in range(s + 1 - b1):
            D = g.reshape(NX, 1, NZ)
            for _ in range(b1):
                D = dx(D)
            for _ in range(b3):
                D = dz(D)
            total += l2sq(D[:, 0, :], HX * HZ)
    return total


def main():
    xg, yg, zg = np.meshgrid(np.arange(NX) * HX, np.arange(NY) * HY,
                             np.arange(NZ) * HZ, indexing="ij")
    u = 0.1 * (1 + 0.3 * xg) * (1 + 0.25 * yg**2) * (2 + np.sin(np.pi * zg))
    out = {}
    for s in range(4):
        out[f"norm_sq_s{s}_g4"] = weighted_norm_sq(u, s, 4.0)
    out["norm_sq_s1_g8"] = weighted_norm_sq(u, 1, 8.0)
    out["tan_norm_sq_s2_g4"] = weighted_norm_sq(u, 2, 4.0, tangential_only=True)
    tr = u[:, 0, :]
    out["bnd_norm_sq_s1_g4"] = boundary_norm_sq(tr, 1, 4.0)
    out["bnd_norm_sq_s2_g8"] = boundary_norm_sq(tr, 2, 8.0)
    # closed-form cross-check: constant field, s=0
    c0 = 0.7
    expect = c0 * c0 * HX * HY * HZ * NY * NZ * float(
        np.sum(np.exp(-2 * 4.0 * np.arange(NX) * HX)))
    got = weighted_norm_sq(np.full((NX, NY, NZ), c0), 0, 4.0)
    assert abs(got - expect) < 1e-12 * expect, (got, expect)
    out["const_check"] = "ok"
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
