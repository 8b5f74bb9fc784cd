"""Log-gamma and the regularized incomplete gamma function with its inverse.

The incomplete gamma ratio is evaluated by its power series when ``x < a + 1``
and by a modified-Lentz continued fraction otherwise. The inverse runs a
safeguarded Newton iteration on ``log x``, started from the Wilson-Hilferty
approximation, falling back to bisection whenever a step leaves the bracket.
"""

from __future__ import annotations

import math
from statistics import NormalDist

from .errors import DomainError

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_TERMS = 100_000
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..5
_STIRLING = (1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0)

_STD_NORMAL = NormalDist()


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for positive ``x``."""
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma requires a finite x > 0, got {x!r}")
    return math.lgamma(x)


def _stirling_correction(a: float) -> float:
    # lgamma(a) - [(a - 1/2) log a - a + log(2 pi)/2]
    if a >= 15.0:
        inv = 1.0 / a
        inv2 = inv * inv
        total = 0.0
        for c in reversed(_STIRLING):
            total = total * inv2 + c
        return total * inv
    return math.lgamma(a) - ((a - 0.5) * math.log(a) - a + _HALF_LOG_2PI)


def _log_prefactor(a: float, x: float) -> float:
    """``a log x - x - lgamma(a)``, arranged to avoid cancellation for large ``a``."""
    if x == 0.0:
        return -math.inf
    t = (x - a) / a
    if t > -0.5:
        deviance = t - math.log1p(t)
    else:
        deviance = t - (math.log(x) - math.log(a))
    return -a * deviance + 0.5 * math.log(a) - _HALF_LOG_2PI - _stirling_correction(a)


def _series(a: float, x: float) -> float:
    # lower regularized gamma P(a, x); converges quickly for x < a + 1
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_TERMS):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(_log_prefactor(a, x))


def _continued_fraction(a: float, x: float) -> float:
    # upper regularized gamma Q(a, x) by modified Lentz; converges for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(_log_prefactor(a, x))


def _check_args(a: float, x: float) -> None:
    if not a > 0.0 or math.isinf(a):
        raise DomainError(f"incomplete gamma requires a finite a > 0, got a={a!r}")
    if not x >= 0.0:
        raise DomainError(f"incomplete gamma requires x >= 0, got x={x!r}")


def gamma_pq(a: float, x: float) -> tuple[float, float]:
    """Return ``(P(a, x), Q(a, x))``, each computed on its accurate branch."""
    a = float(a)
    x = float(x)
    _check_args(a, x)
    if x == 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    if x < a + 1.0:
        p = min(_series(a, x), 1.0)
        return p, 1.0 - p
    q = min(_continued_fraction(a, x), 1.0)
    return 1.0 - q, q


def reg_lower_inc_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(a, x) = gamma(a, x) / Gamma(a)``."""
    return gamma_pq(a, x)[0]


def reg_upper_inc_gamma(a: float, x: float) -> float:
    """Regularized upper incomplete gamma ``Q(a, x) = 1 - P(a, x)``."""
    return gamma_pq(a, x)[1]


def _initial_log_guess(a: float, p: float, q: float) -> float:
    if p <= q:
        z = _STD_NORMAL.inv_cdf(p)
    else:
        z = -_STD_NORMAL.inv_cdf(q)
    if a > 1.0:
        s = 1.0 / (9.0 * a)
        cube = 1.0 - s + z * math.sqrt(s)
        if cube > 0.0:
            return math.log(a) + 3.0 * math.log(cube)
    # small-x asymptote P(a, x) ~ x^a / Gamma(a + 1)
    if p < 0.5:
        return (math.log(p) + math.lgamma(a + 1.0)) / a
    # large-x asymptote Q(a, x) ~ x^(a-1) e^-x / Gamma(a)
    tail = -math.log(q)
    return math.log(max(1.0, tail - math.lgamma(a) + (a - 1.0) * math.log(max(tail, 1.0))))


def _gamma_inverse(a: float, p: float, q: float) -> float:
    # root of P(a, x) = p, working on Q when the target lies in the upper half
    use_lower = p <= 0.5

    def residual(u: float) -> float:
        pp, qq = gamma_pq(a, math.exp(u))
        return pp - p if use_lower else q - qq

    u = _initial_log_guess(a, p, q)
    lo, hi = -math.inf, math.inf
    for _ in range(300):
        r = residual(u)
        if r == 0.0:
            break
        if r > 0.0:
            hi = u
        else:
            lo = u
        # dP/du = x * density = exp(log prefactor)
        slope = math.exp(_log_prefactor(a, math.exp(u)))
        step = r / slope if slope > 0.0 else math.copysign(1.0, r)
        step = max(-5.0, min(5.0, step))
        u_new = u - step
        if not lo < u_new < hi:
            if math.isinf(lo):
                u_new = hi - 2.0
            elif math.isinf(hi):
                u_new = lo + 2.0
            else:
                u_new = 0.5 * (lo + hi)
        if abs(u_new - u) <= 4.0 * _EPS * max(1.0, abs(u)):
            u = u_new
            break
        if hi - lo <= 4.0 * _EPS * max(1.0, abs(u)):
            break
        u = u_new
    return math.exp(u)


def _check_prob(a: float, p: float, name: str) -> None:
    if not a > 0.0 or math.isinf(a):
        raise DomainError(f"inverse incomplete gamma requires a finite a > 0, got a={a!r}")
    if not 0.0 < p < 1.0:
        raise DomainError(f"inverse incomplete gamma requires 0 < {name} < 1, got {p!r}")


def inv_reg_lower_inc_gamma(a: float, p: float) -> float:
    """Solve ``P(a, x) = p`` for ``x > 0``."""
    a = float(a)
    p = float(p)
    _check_prob(a, p, "p")
    return _gamma_inverse(a, p, 1.0 - p)


def inv_reg_upper_inc_gamma(a: float, q: float) -> float:
    """Solve ``Q(a, x) = q`` for ``x > 0``; accurate when ``q`` is tiny."""
    a = float(a)
    q = float(q)
    _check_prob(a, q, "q")
    return _gamma_inverse(a, 1.0 - q, q)
