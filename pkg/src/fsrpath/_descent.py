"""Numba inner loops for penalized weighted least squares.

The kernel solves, for fixed weights w and working response held in the
residual vector,

    min over (b0, beta) of (1/2n) sum_i w_i * r_i^2 + lam * sum_j pen_j |beta_j|

with r = z - b0 - X beta maintained in place.  Outer loops (IRLS, the path
driver) own the weights and convergence policy across lambda values.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def sweep(x, w, r, beta, b0, lam, pen, fit_intercept, active_only):
    """One cyclic coordinate pass; returns (new_b0, max coefficient change).

    When ``active_only`` is true, coordinates currently at zero are skipped.
    ``r`` and ``beta`` are updated in place.
    """
    n, p = x.shape
    delta_max = 0.0
    if fit_intercept:
        num = 0.0
        den = 0.0
        for i in range(n):
            num += w[i] * r[i]
            den += w[i]
        if den > 0.0:
            d = num / den
            if d != 0.0:
                b0 += d
                for i in range(n):
                    r[i] -= d
                ad = abs(d)
                if ad > delta_max:
                    delta_max = ad
    for j in range(p):
        if active_only and beta[j] == 0.0:
            continue
        g = 0.0
        v = 0.0
        for i in range(n):
            xij = x[i, j]
            wx = w[i] * xij
            g += wx * r[i]
            v += wx * xij
        g /= n
        v /= n
        if v <= 0.0:
            continue
        g += v * beta[j]
        thr = lam * pen[j]
        if g > thr:
            b = (g - thr) / v
        elif g < -thr:
            b = (g + thr) / v
        else:
            b = 0.0
        d = b - beta[j]
        if d != 0.0:
            beta[j] = b
            for i in range(n):
                r[i] -= d * x[i, j]
            ad = abs(d)
            if ad > delta_max:
                delta_max = ad
    return b0, delta_max


@njit(cache=True)
def solve_wls(x, w, r, beta, b0, lam, pen, fit_intercept, tol, max_sweeps):
    """Coordinate descent to convergence on one weighted Lasso subproblem.

    Alternates full passes with passes restricted to the active set, in the
    usual pathwise-solver fashion: converge on the active set, then confirm
    with a full pass that admits new coordinates.

    Returns (b0, sweeps_used, converged).
    """
    sweeps = 0
    while sweeps < max_sweeps:
        b0, delta = sweep(x, w, r, beta, b0, lam, pen, fit_intercept, False)
        sweeps += 1
        if delta < tol:
            return b0, sweeps, True
        while sweeps < max_sweeps:
            b0, delta = sweep(x, w, r, beta, b0, lam, pen, fit_intercept, True)
            sweeps += 1
            if delta < tol:
                break
    return b0, sweeps, False
