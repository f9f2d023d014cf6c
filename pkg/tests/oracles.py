"""Independent numerical oracles used by the test suite.

These deliberately avoid the production code paths: spherical Bessel
functions are evaluated from their closed trigonometric forms plus the upward
recurrence, and zeros are found by sign-scan + bisection.  Frozen reference
values in the tests were produced by these oracles and are re-verified here
on every run.
"""

from __future__ import annotations

import numpy as np


def spherical_jl(l: int, k: float) -> float:
    """j_l(k) from closed forms / upward recurrence (fine for small l, k > 0)."""
    if k <= 0:
        raise ValueError("oracle evaluates j_l only for k > 0")
    j0 = np.sin(k) / k
    if l == 0:
        return j0
    j1 = np.sin(k) / k**2 - np.cos(k) / k
    if l == 1:
        return j1
    jm, jc = j0, j1
    for ell in range(1, l):
        jm, jc = jc, (2 * ell + 1) / k * jc - jm
    return jc


def bessel_zero(l: int, m: int, lo: float = 0.05, hi: float = 80.0, scan: float = 0.02) -> float:
    """m-th positive zero of j_l by sign scan plus bisection to ~1e-13."""
    ks = np.arange(max(lo, 1e-6), hi, scan)
    vals = np.array([spherical_jl(l, k) for k in ks])
    signs = np.sign(vals)
    crossings = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(crossings) < m:
        raise ValueError(f"scan window too small for zero #{m} of j_{l}")
    a, b = ks[crossings[m - 1]], ks[crossings[m - 1] + 1]
    fa = spherical_jl(l, a)
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = spherical_jl(l, mid)
        if fa * fm <= 0:
            b = mid
        else:
            a, fa = mid, fm
        if b - a < 1e-14:
            break
    return 0.5 * (a + b)


# Frozen values computed with bessel_zero; re-checked by tests/test_oracles.py.
K_L1 = (4.493409457909064, 7.725251836937707, 10.904121659428899)
K_L2 = (5.763459196894550, 9.095011330476355, 12.322940970566582)
