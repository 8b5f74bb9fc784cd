"""Independent reference computations used to derive expected test values.

Nothing here calls into credtest's root finders or incomplete gamma code.
"""

from __future__ import annotations

import math

import numpy as np


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-13, max_depth: int = 60) -> float:
    """Adaptive Simpson quadrature of ``f`` over the finite interval ``[a, b]``."""

    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2.0, depth - 1
        )

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)


def _upper_tail(pdf, a: float, tol: float, power: int) -> float:
    # x = a + (u / (1 - u)) ** power flattens heavy polynomial tails
    def g(u):
        if u <= 0.0 or u >= 1.0:
            return 0.0
        r = u / (1.0 - u)
        x = a + r**power
        if not math.isfinite(x):
            return 0.0
        value = pdf(x) * power * r ** (power - 1) / (1.0 - u) ** 2
        return value if math.isfinite(value) else 0.0

    return adaptive_simpson(g, 0.0, 1.0, tol)


def _from_endpoint(pdf, a: float, b: float, tol: float, power: int) -> float:
    # x = a + (b - a) v ** power smooths an integrable singularity at a
    def g(v):
        if v <= 0.0:
            return 0.0
        value = pdf(a + (b - a) * v**power) * (b - a) * power * v ** (power - 1)
        return value if math.isfinite(value) else 0.0

    return adaptive_simpson(g, 0.0, 1.0, tol)


def integrate_density(pdf, lo: float, hi: float, breakpoints=(), tol: float = 1e-12, power: int = 8) -> float:
    """Integral of a density over ``[lo, hi]`` (either end may be infinite).

    ``breakpoints`` split the range so narrow peaks are not stepped over.
    Infinite ends and the finite support endpoint ``lo`` go through power
    substitutions; interior pieces use plain adaptive Simpson.
    """
    pts = [lo] + sorted(b for b in breakpoints if lo < b < hi) + [hi]
    if len(pts) == 2 and math.isinf(lo) and math.isinf(hi):
        pts = [lo, 0.0, hi]
    total = 0.0
    for i, (a, b) in enumerate(zip(pts[:-1], pts[1:])):
        if math.isinf(a):
            total += _upper_tail(lambda x: pdf(-x), -b, tol, power)
        elif math.isinf(b):
            total += _upper_tail(pdf, a, tol, power)
        elif i == 0:
            total += _from_endpoint(pdf, a, b, tol, power)
        else:
            total += adaptive_simpson(pdf, a, b, tol)
    return total


def brute_force_central_evidence(d, theta0: float, n_grid: int = 10_000, refine: int = 0) -> float:
    """Mass outside the largest central interval excluding ``theta0``, by grid search.

    Scans credibilities ``c`` on a grid; the central interval at credibility
    ``c`` leaves ``1 - c`` outside. Returns the smallest ``1 - c`` among grid
    intervals that exclude ``theta0`` (1.0 when every grid interval contains it).
    With ``refine > 0`` the grid cell holding the answer is scanned again on a
    ``refine``-point grid.
    """

    def excluded(c):
        tail = (1.0 - c) / 2.0
        return not d.quantile(tail) <= theta0 <= d.quantile(1.0 - tail)

    grid = np.linspace(0.0, 1.0, n_grid + 1)
    best = 1.0
    for c in grid[1:-1]:
        if excluded(c):
            best = min(best, 1.0 - c)
    if refine and best < 1.0:
        c_hi = 1.0 - best
        step = 1.0 / n_grid
        for c in np.linspace(c_hi, min(c_hi + step, 1.0), refine + 1)[1:-1]:
            if excluded(c):
                best = min(best, 1.0 - c)
    return best


def normalized_grid_posterior(log_unnormalized, grid: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Density values on ``grid`` of the posterior proportional to ``exp(log_unnormalized)``.

    The normalizing constant comes from adaptive quadrature over the full
    support ``[lo, hi]``, after shifting by the log-density maximum on the grid.
    """
    shift = max(log_unnormalized(float(t)) for t in grid)

    def f(t):
        v = log_unnormalized(t)
        return math.exp(v - shift) if v > -math.inf else 0.0

    z = integrate_density(f, lo, hi, breakpoints=[float(t) for t in grid[:: max(1, len(grid) // 50)]], tol=1e-13)
    return np.array([f(float(t)) / z for t in grid])


def exact_power(scenario_kind: str, std_set, n: int, theta0: float, theta: float) -> float:
    """Exact rejection probability of a set-inversion test in a pivotal model.

    ``std_set`` is the credible set ``(l, r)`` of the posterior with unit
    scale: gamma(n, 1) for the exponential rate, inverse_gamma(n/2, 1) for the
    normal variance. The posterior set is that set rescaled by the sufficient
    statistic, whose sampling law is known exactly.
    """
    from scipy import stats

    l, r = std_set
    if scenario_kind == "exponential_rate":
        # set for lambda is (l, r) / S, S * theta ~ gamma(n, 1); reject iff S < l/theta0 or S > r/theta0
        g = stats.gamma(n)
        return g.cdf(theta * l / theta0) + g.sf(theta * r / theta0)
    if scenario_kind == "normal_variance_known_mean":
        # set for sigma^2 is (SS/2) (l, r), SS / theta ~ chi2(n)
        c = stats.chi2(n)
        return c.cdf(2 * theta0 / (theta * r)) + c.sf(2 * theta0 / (theta * l))
    raise ValueError(scenario_kind)
