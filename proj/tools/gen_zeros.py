#!/usr/bin/env python3
"""Generate tables of imaginary parts of nontrivial zeta zeros.

Writes data/zeros_100.txt (first 100 zeros, 12 decimals, via mpmath) and
data/zeros_100000.txt (first 100000 zeros, 9 decimals).  Zeros beyond the
mpmath range are located as sign changes of the Riemann-Siegel Z function
(main sum plus the C0 correction term) on a fine grid, then refined by
bisection.  The global count is cross-checked against the Riemann-von
Mangoldt formula before anything is written.
"""

import sys
import numpy as np
import mpmath

TWO_PI = 2.0 * np.pi

N_MPMATH = 300      # zeros taken from mpmath at high precision
N_TOTAL = 100000
GRID_STEP = 0.005


def theta(t):
    """Riemann-Siegel theta, asymptotic expansion (t >= 10)."""
    return (t / 2.0 * np.log(t / TWO_PI) - t / 2.0 - np.pi / 8.0
            + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t ** 3))


def rs_z(t):
    """Vectorized Riemann-Siegel Z(t), main sum + C0 term."""
    t = np.asarray(t, dtype=np.float64)
    tau = np.sqrt(t / TWO_PI)
    nu = np.floor(tau).astype(np.int64)
    th = theta(t)
    z = np.zeros_like(t)
    nmax = int(nu.max())
    logs = np.log(np.arange(1, nmax + 1, dtype=np.float64))
    rsqrt = 1.0 / np.sqrt(np.arange(1, nmax + 1, dtype=np.float64))
    for n in range(1, nmax + 1):
        mask = nu >= n
        if not mask.any():
            break
        z[mask] += rsqrt[n - 1] * np.cos(th[mask] - t[mask] * logs[n - 1])
    z *= 2.0
    p = tau - nu
    c0 = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)
    z += np.where(nu % 2 == 1, 1.0, -1.0) * c0 / np.sqrt(tau)
    return z


def bisect_roots(lo, hi, zlo):
    """Vectorized bisection for sign changes of rs_z in [lo, hi]."""
    lo = lo.copy()
    hi = hi.copy()
    slo = np.sign(zlo)
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        smid = np.sign(rs_z(mid))
        left = smid == slo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def zero_count_below(t):
    """N(t) from the Riemann-von Mangoldt formula, ignoring S(t)."""
    return theta(np.float64(t)) / np.pi + 1.0


def main():
    mpmath.mp.dps = 25
    head = [mpmath.zetazero(k).imag for k in range(1, N_MPMATH + 1)]

    t_start = float(head[-1]) + 0.05
    # generous upper end; gamma_100000 ~ 74920.8
    t_end = 75010.0
    chunk = 400000

    roots = []
    t = t_start
    zprev_val = rs_z(np.array([t_start]))[0]
    while t < t_end:
        hi_end = min(t + chunk * GRID_STEP, t_end)
        grid = np.arange(t, hi_end + GRID_STEP, GRID_STEP)
        zv = rs_z(grid)
        zv[0] = zprev_val  # continuity across chunk boundary
        sign = np.sign(zv)
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        if idx.size:
            r = bisect_roots(grid[idx], grid[idx + 1], zv[idx])
            roots.append(r)
        zprev_val = zv[-1]
        t = grid[-1]
    roots = np.concatenate(roots)

    gammas = np.concatenate([np.array([float(g) for g in head]), roots])
    if not np.all(np.diff(gammas) > 0):
        sys.exit("zeros not strictly ascending")

    # count check against Riemann-von Mangoldt between consecutive zeros
    n_expect = zero_count_below(0.5 * (gammas[N_TOTAL - 1] + gammas[N_TOTAL]))
    if abs(n_expect - N_TOTAL) > 0.5:
        sys.exit(f"count check failed: expected {n_expect:.3f} zeros, "
                 f"have {N_TOTAL}")

    # spot check a few RS zeros against mpmath
    for k in (N_MPMATH + 1, N_MPMATH + 57, 2000):
        exact = float(mpmath.zetazero(k).imag)
        got = gammas[k - 1]
        if abs(got - exact) > 2e-4:
            sys.exit(f"zero {k}: got {got}, expected {exact}")

    with open("data/zeros_100.txt", "w") as f:
        for g in head[:100]:
            f.write(f"{float(g):.12f}\n")
    with open("data/zeros_100000.txt", "w") as f:
        for g in gammas[:N_TOTAL]:
            f.write(f"{g:.9f}\n")
    print(f"wrote {N_TOTAL} zeros, last gamma = {gammas[N_TOTAL-1]:.6f}")


if __name__ == "__main__":
    main()
