#!/usr/bin/env python3
"""Independent oracle for the planar-sheet stability verdict.

Evaluates the weak-stability conditions with mpmath high precision and a
dense theta grid, for the reference sheet and a few frozen spot sheets.
The printed values are frozen into the C++ unit tests.
"""

import json

import mpmath as mp

mp.mp.dps = 50


def g_of_theta(c, ur, wr, ul, wl, t):
    dl = ul * mp.sin(t) - wl * mp.cos(t)
    dr = ur * mp.sin(t) - wr * mp.cos(t)
    return c * c / (dl * dl) + c * c / (dr * dr)


def verdict(c, ur, wr, ul, wl, n_grid=2_000_001):
    out = {}
    out["supersonic"] = bool(ur > c and ul > c)
    if not out["supersonic"]:
        out["verdict"] = "NotSupersonic"
        return out
    cross = ur * wl - ul * wr
    out["nonparallel"] = bool(abs(cross) > mp.mpf("1e-30"))
    if not out["nonparallel"]:
        out["verdict"] = "ParallelUnstable"
        return out

    # bisecting rotation
    ar = mp.atan2(wr, ur)
    al = mp.atan2(wl, ul)
    rot = (ar + al) / 2
    ca, sa = mp.cos(rot), mp.sin(rot)
    ur, wr = ca * ur + sa * wr, -sa * ur + ca * wr
    ul, wl = ca * ul + sa * wl, -sa * ul + ca * wl
    out["rotation"] = float(rot)
    out["sign_normalized"] = bool(wr * wl < 0)

    out["velocity_line"] = bool(c * c / ur**2 + c * c / ul**2 < 1)
    out["shear_line"] = bool(wr**2 > c * c and wl**2 > c * c)

    tl = min(mp.atan(wl / ul), mp.atan(wr / ur))
    tr = max(mp.atan(wl / ul), mp.atan(wr / ur))
    eps = (tr - tl) * mp.mpf("1e-9")
    best_v, best_t = mp.inf, None
    for i in range(n_grid):
        t = tl + eps + (tr - tl - 2 * eps) * i / (n_grid - 1)
        v = g_of_theta(c, ur, wr, ul, wl, t)
        if v < best_v:
            best_v, best_t = v, t
    out["min_value"] = float(best_v)
    out["argmin"] = float(best_t)
    out["theta_l"], out["theta_r"] = float(tl), float(tr)
    out["min_line"] = bool(best_v < 1)

    lhs = (ul * wr - ur * wl) ** 2
    rhs = 2 * (c * ul + c * ur) ** 2 + 2 * (c * wl + c * wr) ** 2
    out["nonresonance"] = bool(abs(lhs - rhs) > mp.mpf("1e-12") * max(lhs, rhs))
    out["nonres_lhs"] = float(lhs)
    out["nonres_rhs"] = float(rhs)

    ok = all(out[k] for k in ("sign_normalized", "velocity_line", "shear_line",
                              "min_line", "nonresonance"))
    out["verdict"] = "WeaklyStable" if ok else "Unstable"
    return out


def main():
    cases = {
        # the reference sheet: c=1, u=3/3, w=2/-2
        "reference": verdict(mp.mpf(1), mp.mpf(3), mp.mpf(2), mp.mpf(3), mp.mpf(-2)),
        # same speeds, both shears positive (rotation must normalize signs)
        "same_sign_shear": verdict(mp.mpf(1), mp.mpf(3), mp.mpf(2), mp.mpf(3), mp.mpf(1)),
        # subsonic side
        "subsonic": verdict(mp.mpf(1), mp.mpf("0.9"), mp.mpf(2), mp.mpf(3), mp.mpf(-2)),
        # supersonic but shear too weak (w^2 < c^2 after rotation)
        "weak_shear": verdict(mp.mpf(1), mp.mpf(4), mp.mpf("0.5"), mp.mpf(4), mp.mpf("-0.5")),
        # non-reference stable sheet
        "stable_2": verdict(mp.mpf(1), mp.mpf(4), mp.mpf(3), mp.mpf("3.5"), mp.mpf("-2.5")),
        # theta-bounds example: (1,0)/(1,1)
        "theta_example": {
            "theta_l": 0.0,
            "theta_r": float(mp.pi / 4),
        },
    }
    print(json.dumps(cases, indent=1))


if __name__ == "__main__":
    main()
