#!/usr/bin/env python3
"""Independent oracle for x-derivative jet construction at the inflow plane.

Mirrors the module's discrete recipe on a small (y,z) grid:
  jet-1 of the front:  psi_x = (v - D_z Psi * w) / u        at x=0
  jet-1 of the state:  U_x = -A1^{-1} [ (1/Psi_y) Mt D_y U + A3 D_z U ]
  jet-2 of both: one-sided x-derivative of the generator along the
                 linear-in-x extension built from jet-1.
Freezes probe values and the order-0/1 matching defects at {x=0,y=0}.
"""

import json

import numpy as np

NY, NZ = 7, 8
YL, ZL = 1.2, 2.0
HY, HZ = YL / (NY - 1), ZL / NZ
HX = 0.125
GAMMA, K = 2.0, 1.0


def dy2(F):
    G = np.empty_like(F)
    G[1:-1] = (F[2:] - F[:-2]) / (2 * HY)
    G[0] = (-3 * F[0] + 4 * F[1] - F[2]) / (2 * HY)
    G[-1] = (3 * F[-1] - 4 * F[-2] + F[-3]) / (2 * HY)
    return G


def dz2(F):
    return (np.roll(F, -1, 1) - np.roll(F, 1, 1)) / (2 * HZ)


def smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t**3 * (10 - 15 * t + 6 * t * t)


def chi_bridge(t):
    return 1.0 - smoothstep(t - 1.0)


def flux1(u, p):
    rho = np.sqrt(p)
    rc2 = 2.0 * p
    zz, one = np.zeros_like(u), np.ones_like(u)
    return np.array([[rho * u, zz, zz, one], [zz, rho * u, zz, zz],
                     [zz, zz, rho * u, zz], [one, zz, zz, u / rc2]])


def flux2(v, p):
    rho = np.sqrt(p)
    rc2 = 2.0 * p
    zz, one = np.zeros_like(v), np.ones_like(v)
    return np.array([[rho * v, zz, zz, zz], [zz, rho * v, zz, one],
                     [zz, zz, rho * v, zz], [zz, one, zz, v / rc2]])


def flux3(w, p):
    rho = np.sqrt(p)
    rc2 = 2.0 * p
    zz, one = np.zeros_like(w), np.ones_like(w)
    return np.array([[rho * w, zz, zz, zz], [zz, rho * w, zz, zz],
                     [zz, zz, rho * w, one], [zz, zz, one, w / rc2]])


def traces(s):
    yg, zg = np.meshgrid(np.arange(NY) * HY, np.arange(NZ) * HZ, indexing="ij")
    chi = chi_bridge(1.0 + yg)
    psi0 = 0.02 * np.sin(np.pi * zg[0])          # 1D in z
    u = 3.0 + 0.01 * s * np.cos(np.pi * zg) * (1 + yg)
    v = 0.015 * np.sin(np.pi * zg) * (1 - 0.3 * yg)
    w = 2.0 * s + 0.005 * np.cos(2 * np.pi * zg) * yg
    p = 1.0 + 0.02 * np.cos(np.pi * zg) * (1 + 0.3 * s * yg)
    Psi0 = s * yg + chi * psi0[None, :]
    return u, v, w, p, Psi0


def generator(u, v, w, p, Psi, psix):
    """RHS of the jet recursion: G = -A1^{-1}[(1/Psi_y) Mt Dy U + A3 Dz U]."""
    A1 = flux1(u, p)
    A2 = flux2(v, p)
    A3 = flux3(w, p)
    Py = dy2(Psi)
    Pz = dz2(Psi)
    Mt = A2 - psix * A1 - Pz * A3
    Uy = [dy2(q) for q in (u, v, w, p)]
    Uz = [dz2(q) for q in (u, v, w, p)]
    rhs = [sum(Mt[r][c] * Uy[c] for c in range(4)) / Py
           + sum(A3[r][c] * Uz[c] for c in range(4)) for r in range(4)]
    G = np.empty((4, NY, NZ))
    for j in range(NY):
        for k in range(NZ):
            A1p = np.array([[A1[r][c][j, k] for c in range(4)] for r in range(4)])
            b = np.array([rhs[r][j, k] for r in range(4)])
            G[:, j, k] = -np.linalg.solve(A1p, b)
    return G


def psi_generator(u, v, w, Psi):
    return (v - dz2(Psi) * w) / u


def jets(s):
    u, v, w, p, Psi0 = traces(s)
    psi1 = psi_generator(u, v, w, Psi0)
    U1 = generator(u, v, w, p, Psi0, psi1)
    # jet-2 via one-sided x-derivative along the linear extension
    gU = []
    gP = []
    for m in range(3):
        xm = m * HX
        um, vm, wm, pm = (u + xm * U1[0], v + xm * U1[1],
                          w + xm * U1[2], p + xm * U1[3])
        Pm = Psi0 + xm * psi1
        pxm = psi_generator(um, vm, wm, Pm)
        gP.append(pxm)
        gU.append(generator(um, vm, wm, pm, Pm, pxm))
    psi2 = (-3 * gP[0] + 4 * gP[1] - gP[2]) / (2 * HX)
    U2 = (-3 * gU[0] + 4 * gU[1] - gU[2]) / (2 * HX)
    return psi1, psi2, U1, U2, (u, v, w, p, Psi0)


def main():
    out = {}
    probes = [(0, 3), (2, 5), (4, 2)]
    res = {}
    for s, tag in ((1, "plus"), (-1, "minus")):
        psi1, psi2, U1, U2, tr = jets(s)
        res[tag] = (psi1, psi2, U1, U2, tr)
        out[f"psi_jet1_{tag}"] = [float(psi1[pq]) for pq in probes]
        out[f"psi_jet2_{tag}"] = [float(psi2[pq]) for pq in probes]
        out[f"U_jet1_{tag}"] = [[float(U1[r][pq]) for r in range(4)]
                                for pq in probes]
        out[f"U_jet2_{tag}"] = [[float(U2[r][pq]) for r in range(4)]
                                for pq in probes]
    # matching defects at {x=0, y=0}
    pp, pm = res["plus"][4][3], res["minus"][4][3]
    Pp, Pm = res["plus"][4][4], res["minus"][4][4]
    out["defect0_psi"] = float(np.max(np.abs(Pp[0] - Pm[0])))
    out["defect0_p"] = float(np.max(np.abs(pp[0] - pm[0])))
    out["defect1_psi"] = float(np.max(np.abs(res["plus"][0][0] - res["minus"][0][0])))
    out["defect1_p"] = float(np.max(np.abs(res["plus"][2][3][0] - res["minus"][2][3][0])))
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
