"""Central intervals, credible bounds and highest posterior density sets.

Sets are treated as closed at their finite endpoints when testing membership,
so a parameter value exactly on a boundary is never rejected.

The HPD set is found by searching over the density level ``k``: for a given
level the endpoints of ``{theta: density >= k}`` are located by bracketed root
finding on each side of the mode, and the enclosed mass comes from CDF
differences. All of this runs on the standardized posterior, so the result is
cached per (family, shape, alpha) and rescaled for each location and scale.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum

from scipy.optimize import brentq

from .dist import ContinuousPosterior, Family, ShapeClass, standard_member
from .errors import DomainError, UnsupportedShapeError

ALPHA_MIN = 1e-6
ALPHA_MAX = 1.0 - 1e-6

_XTOL = 1e-300
_RTOL = 4.0 * 2.220446049250313e-16
_MAXITER = 200


class SetKind(str, Enum):
    CENTRAL = "central"
    HPD = "hpd"
    LOWER_BOUND = "lower_bound"
    UPPER_BOUND = "upper_bound"


@dataclass(frozen=True)
class CredibleSet:
    """A finite union of disjoint, sorted intervals carrying posterior mass."""

    kind: SetKind
    intervals: tuple[tuple[float, float], ...]
    nominal_credibility: float
    achieved_mass: float
    density_level: float | None = None
    one_sided: bool = False

    @property
    def lower(self) -> float:
        return self.intervals[0][0]

    @property
    def upper(self) -> float:
        return self.intervals[-1][1]

    @property
    def length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def contains(self, theta0: float) -> bool:
        return any(lo <= theta0 <= hi for lo, hi in self.intervals)


def contains(cset: CredibleSet, theta0: float) -> bool:
    """True iff ``theta0`` lies in the closure of one of the set's intervals."""
    return cset.contains(theta0)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not ALPHA_MIN <= alpha <= ALPHA_MAX:
        raise DomainError(f"alpha must lie in [{ALPHA_MIN:g}, 1 - {ALPHA_MIN:g}], got {alpha!r}")
    return alpha


def central_interval(d: ContinuousPosterior, alpha: float) -> CredibleSet:
    """Equal-tailed interval ``(q[alpha/2], q[1 - alpha/2])``."""
    alpha = check_alpha(alpha)
    lo = d.quantile(alpha / 2.0)
    hi = d.isf(alpha / 2.0)
    mass = 1.0 - d.cdf(lo) - d.sf(hi)
    return CredibleSet(SetKind.CENTRAL, ((lo, hi),), 1.0 - alpha, mass)


def credible_bound(d: ContinuousPosterior, alpha: float, side: str) -> CredibleSet:
    """One-sided set: ``side="lower"`` gives ``[q[alpha], hi)``, ``"upper"`` gives ``(lo, q[1 - alpha]]``."""
    alpha = check_alpha(alpha)
    support_lo, support_hi = d.support
    if side == "lower":
        q = d.quantile(alpha)
        return CredibleSet(SetKind.LOWER_BOUND, ((q, support_hi),), 1.0 - alpha, d.sf(q), one_sided=True)
    if side == "upper":
        q = d.isf(alpha)
        return CredibleSet(SetKind.UPPER_BOUND, ((support_lo, q),), 1.0 - alpha, d.cdf(q), one_sided=True)
    raise DomainError(f"side must be 'lower' or 'upper', got {side!r}")


# ---------------------------------------------------------------------------
# level sets of a unimodal standardized density
# ---------------------------------------------------------------------------


def _solve(g, a: float, b: float) -> float:
    return brentq(g, a, b, xtol=_XTOL, rtol=_RTOL, maxiter=_MAXITER)


def _left_end(std, s: tuple, mode: float, log_k: float) -> float:
    def g(z):
        return std.log_pdf(z, s) - log_k

    lo = std.lo
    if math.isinf(lo):
        step = 1.0
        a = mode - step
        while g(a) > 0.0:
            mode, step = a, 2.0 * step
            a = mode - step
        return _solve(g, a, mode)
    if g(lo) >= 0.0:
        return lo
    inner = mode
    while True:
        a = lo + 0.5 * (inner - lo)
        if a <= lo:
            return lo
        if g(a) < 0.0:
            return _solve(g, a, inner)
        inner = a


def _right_end(std, s: tuple, mode: float, log_k: float) -> float:
    def g(z):
        return std.log_pdf(z, s) - log_k

    step = max(1.0, abs(mode))
    inner = mode
    b = mode + step
    while g(b) > 0.0:
        inner, step = b, 2.0 * step
        b = inner + step
    return _solve(g, inner, b)


def level_endpoints(std, s: tuple, log_k: float) -> tuple[float, float]:
    """Endpoints of ``{z: log density >= log_k}`` for an interior-mode density."""
    mode = std.mode(s)
    if log_k >= std.log_pdf(mode, s):
        return mode, mode
    return _left_end(std, s, mode, log_k), _right_end(std, s, mode, log_k)


def _tail_mass(std, s: tuple, left: float, right: float) -> float:
    return std.cdf(left, s) + std.sf(right, s)


@functools.lru_cache(maxsize=4096)
def _standard_hpd(family: Family, shape: tuple, alpha: float):
    std = standard_member(family)
    shape_class = std.shape_class(shape)
    if shape_class is ShapeClass.MONOTONE_DECREASING:
        right = std.isf(alpha, shape)
        return std.lo, right, std.log_pdf(right, shape), std.cdf(right, shape), True
    if shape_class is ShapeClass.MONOTONE_INCREASING:
        if math.isinf(std.hi):
            raise UnsupportedShapeError("increasing density on an unbounded support has no HPD set")
        left = std.ppf(alpha, shape)
        return left, std.hi, std.log_pdf(left, shape), std.sf(left, shape), True
    if shape_class not in (ShapeClass.SYMMETRIC_UNIMODAL, ShapeClass.UNIMODAL_INTERIOR_MODE):
        raise UnsupportedShapeError(f"no HPD construction for shape class {shape_class!r}")

    top = std.log_pdf(std.mode(shape), shape)

    def excess_tail(log_k: float) -> float:
        left, right = level_endpoints(std, shape, log_k)
        return _tail_mass(std, shape, left, right) - alpha

    drop = 1.0
    while excess_tail(top - drop) > 0.0:
        drop *= 2.0
    log_k = _solve(excess_tail, top - drop, top)
    left, right = level_endpoints(std, shape, log_k)
    mass = 1.0 - _tail_mass(std, shape, left, right)
    return left, right, log_k, mass, False


def hpd_set(d: ContinuousPosterior, alpha: float) -> CredibleSet:
    """Highest posterior density set ``{theta: density >= k}`` of mass ``1 - alpha``.

    Monotone densities give a one-sided set attached to the support endpoint
    where the density is largest.
    """
    alpha = check_alpha(alpha)
    left, right, log_k, mass, one_sided = _standard_hpd(d.family, d.shape_params, alpha)
    interval = (d.from_standard(left), d.from_standard(right))
    level = math.exp(log_k) / d.scale
    return CredibleSet(SetKind.HPD, (interval,), 1.0 - alpha, mass, level, one_sided)
