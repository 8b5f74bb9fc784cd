"""Continuous posterior families with log-density, CDF and quantile.

Every supported family is a location-scale transform of a standard member
indexed only by its shape parameters: ``theta = loc + scale * Z``. All
evaluation happens on the standard variable ``Z``, which lets the credible-set
code cache its root-finding work per shape and reuse it across scales.

Weibull is parametrized by ``(shape k, scale lam)`` with
``cdf(t) = 1 - exp(-(t / lam) ** k)``; gamma by ``(shape, rate)``; inverse gamma
by ``(shape, scale)``; Pareto by ``(minimum, index)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from statistics import NormalDist

from .errors import DomainError
from .special import (
    gamma_pq,
    inv_reg_lower_inc_gamma,
    inv_reg_upper_inc_gamma,
    log_gamma,
    reg_lower_inc_gamma,
)

__all__ = [
    "ContinuousPosterior",
    "Family",
    "ShapeClass",
    "cdf",
    "log_gamma",
    "log_pdf",
    "make_distribution",
    "quantile",
    "reg_lower_inc_gamma",
    "inv_reg_lower_inc_gamma",
]

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)
_STD_NORMAL = NormalDist()


class Family(str, Enum):
    NORMAL = "normal"
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"
    INVERSE_GAMMA = "inverse_gamma"
    WEIBULL = "weibull"
    PARETO = "pareto"


class ShapeClass(str, Enum):
    SYMMETRIC_UNIMODAL = "symmetric_unimodal"
    UNIMODAL_INTERIOR_MODE = "unimodal_interior_mode"
    MONOTONE_DECREASING = "monotone_decreasing"
    MONOTONE_INCREASING = "monotone_increasing"


_PARAM_NAMES = {
    Family.NORMAL: ("mean", "sd"),
    Family.EXPONENTIAL: ("rate",),
    Family.GAMMA: ("shape", "rate"),
    Family.INVERSE_GAMMA: ("shape", "scale"),
    Family.WEIBULL: ("shape", "scale"),
    Family.PARETO: ("min", "index"),
}


# ---------------------------------------------------------------------------
# Standard members. ``s`` is the tuple of shape parameters (possibly empty).
# ---------------------------------------------------------------------------


class _Standard:
    lo = 0.0
    hi = math.inf

    def log_pdf(self, z: float, s: tuple) -> float:
        raise NotImplementedError

    def cdf(self, z: float, s: tuple) -> float:
        raise NotImplementedError

    def sf(self, z: float, s: tuple) -> float:
        raise NotImplementedError

    def ppf(self, p: float, s: tuple) -> float:
        raise NotImplementedError

    def isf(self, q: float, s: tuple) -> float:
        raise NotImplementedError

    def mode(self, s: tuple) -> float:
        return self.lo

    def shape_class(self, s: tuple) -> ShapeClass:
        return ShapeClass.MONOTONE_DECREASING


class _Normal(_Standard):
    lo = -math.inf

    def log_pdf(self, z, s):
        if math.isinf(z):
            return -math.inf
        return -0.5 * z * z - _HALF_LOG_2PI

    def cdf(self, z, s):
        return 0.5 * math.erfc(-z / _SQRT2)

    def sf(self, z, s):
        return 0.5 * math.erfc(z / _SQRT2)

    def ppf(self, p, s):
        return _STD_NORMAL.inv_cdf(p)

    def isf(self, q, s):
        return -_STD_NORMAL.inv_cdf(q)

    def mode(self, s):
        return 0.0

    def shape_class(self, s):
        return ShapeClass.SYMMETRIC_UNIMODAL


class _Exponential(_Standard):
    def log_pdf(self, z, s):
        if z < 0.0 or math.isinf(z):
            return -math.inf
        return -z

    def cdf(self, z, s):
        return -math.expm1(-z) if z > 0.0 else 0.0

    def sf(self, z, s):
        return math.exp(-z) if z > 0.0 else 1.0

    def ppf(self, p, s):
        return -math.log1p(-p)

    def isf(self, q, s):
        return -math.log(q)


class _Gamma(_Standard):
    def log_pdf(self, z, s):
        (a,) = s
        if z < 0.0 or math.isinf(z):
            return -math.inf
        if z == 0.0:
            if a < 1.0:
                return math.inf
            return -math.lgamma(a) if a == 1.0 else -math.inf
        return (a - 1.0) * math.log(z) - z - math.lgamma(a)

    def cdf(self, z, s):
        return gamma_pq(s[0], z)[0] if z > 0.0 else 0.0

    def sf(self, z, s):
        return gamma_pq(s[0], z)[1] if z > 0.0 else 1.0

    def ppf(self, p, s):
        return inv_reg_lower_inc_gamma(s[0], p)

    def isf(self, q, s):
        return inv_reg_upper_inc_gamma(s[0], q)

    def mode(self, s):
        return max(s[0] - 1.0, 0.0)

    def shape_class(self, s):
        if s[0] <= 1.0:
            return ShapeClass.MONOTONE_DECREASING
        return ShapeClass.UNIMODAL_INTERIOR_MODE


class _InverseGamma(_Standard):
    # Z = 1 / G with G ~ gamma(a, 1)

    def log_pdf(self, z, s):
        (a,) = s
        if z <= 0.0 or math.isinf(z):
            return -math.inf
        return -(a + 1.0) * math.log(z) - 1.0 / z - math.lgamma(a)

    def cdf(self, z, s):
        return gamma_pq(s[0], 1.0 / z)[1] if z > 0.0 else 0.0

    def sf(self, z, s):
        return gamma_pq(s[0], 1.0 / z)[0] if z > 0.0 else 1.0

    def ppf(self, p, s):
        return 1.0 / inv_reg_upper_inc_gamma(s[0], p)

    def isf(self, q, s):
        return 1.0 / inv_reg_lower_inc_gamma(s[0], q)

    def mode(self, s):
        return 1.0 / (s[0] + 1.0)

    def shape_class(self, s):
        return ShapeClass.UNIMODAL_INTERIOR_MODE


class _Weibull(_Standard):
    def log_pdf(self, z, s):
        (k,) = s
        if z < 0.0 or math.isinf(z):
            return -math.inf
        if z == 0.0:
            if k < 1.0:
                return math.inf
            return 0.0 if k == 1.0 else -math.inf
        return math.log(k) + (k - 1.0) * math.log(z) - z**k

    def cdf(self, z, s):
        return -math.expm1(-(z ** s[0])) if z > 0.0 else 0.0

    def sf(self, z, s):
        return math.exp(-(z ** s[0])) if z > 0.0 else 1.0

    def ppf(self, p, s):
        return (-math.log1p(-p)) ** (1.0 / s[0])

    def isf(self, q, s):
        return (-math.log(q)) ** (1.0 / s[0])

    def mode(self, s):
        (k,) = s
        if k <= 1.0:
            return 0.0
        return ((k - 1.0) / k) ** (1.0 / k)

    def shape_class(self, s):
        if s[0] <= 1.0:
            return ShapeClass.MONOTONE_DECREASING
        return ShapeClass.UNIMODAL_INTERIOR_MODE


class _Pareto(_Standard):
    lo = 1.0

    def log_pdf(self, z, s):
        (alpha,) = s
        if z < 1.0 or math.isinf(z):
            return -math.inf
        return math.log(alpha) - (alpha + 1.0) * math.log(z)

    def cdf(self, z, s):
        return -math.expm1(-s[0] * math.log(z)) if z > 1.0 else 0.0

    def sf(self, z, s):
        return math.exp(-s[0] * math.log(z)) if z > 1.0 else 1.0

    def ppf(self, p, s):
        return math.exp(-math.log1p(-p) / s[0])

    def isf(self, q, s):
        return math.exp(-math.log(q) / s[0])


_STANDARD = {
    Family.NORMAL: _Normal(),
    Family.EXPONENTIAL: _Exponential(),
    Family.GAMMA: _Gamma(),
    Family.INVERSE_GAMMA: _InverseGamma(),
    Family.WEIBULL: _Weibull(),
    Family.PARETO: _Pareto(),
}


def standard_member(family: Family) -> _Standard:
    """The standard (unit location and scale) member of ``family``."""
    return _STANDARD[family]


@functools.lru_cache(maxsize=8192)
def _std_ppf(family: Family, shape: tuple, p: float) -> float:
    return _STANDARD[family].ppf(p, shape)


@functools.lru_cache(maxsize=8192)
def _std_isf(family: Family, shape: tuple, q: float) -> float:
    return _STANDARD[family].isf(q, shape)


def _location_scale(family: Family, params: tuple) -> tuple[float, float, tuple]:
    if family is Family.NORMAL:
        return params[0], params[1], ()
    if family is Family.EXPONENTIAL:
        return 0.0, 1.0 / params[0], ()
    if family is Family.GAMMA:
        return 0.0, 1.0 / params[1], (params[0],)
    if family is Family.PARETO:
        return 0.0, params[0], (params[1],)
    # inverse gamma and Weibull: (shape, scale)
    return 0.0, params[1], (params[0],)


@dataclass(frozen=True)
class ContinuousPosterior:
    """An absolutely continuous distribution on an interval of the real line.

    Build instances with :func:`make_distribution`, which validates parameters.
    """

    family: Family
    params: tuple[float, ...]

    @functools.cached_property
    def _ls(self) -> tuple[float, float, tuple]:
        return _location_scale(self.family, self.params)

    @property
    def loc(self) -> float:
        return self._ls[0]

    @property
    def scale(self) -> float:
        return self._ls[1]

    @property
    def shape_params(self) -> tuple:
        return self._ls[2]

    @property
    def standard(self) -> _Standard:
        return _STANDARD[self.family]

    @property
    def support(self) -> tuple[float, float]:
        std = self.standard
        return self.from_standard(std.lo), self.from_standard(std.hi)

    @property
    def shape_class(self) -> ShapeClass:
        return self.standard.shape_class(self.shape_params)

    @property
    def mode(self) -> float:
        return self.from_standard(self.standard.mode(self.shape_params))

    def to_standard(self, t: float) -> float:
        loc, scale, _ = self._ls
        return (t - loc) / scale

    def from_standard(self, z: float) -> float:
        loc, scale, _ = self._ls
        return loc + scale * z

    def log_pdf(self, t: float) -> float:
        return self.standard.log_pdf(self.to_standard(t), self.shape_params) - math.log(self.scale)

    def pdf(self, t: float) -> float:
        return math.exp(self.log_pdf(t))

    def cdf(self, t: float) -> float:
        z = self.to_standard(t)
        std = self.standard
        if z <= std.lo:
            return 0.0
        if z >= std.hi:
            return 1.0
        return std.cdf(z, self.shape_params)

    def sf(self, t: float) -> float:
        """Upper tail ``P(theta > t)``, accurate where ``cdf`` is close to one."""
        z = self.to_standard(t)
        std = self.standard
        if z <= std.lo:
            return 1.0
        if z >= std.hi:
            return 0.0
        return std.sf(z, self.shape_params)

    def quantile(self, p: float) -> float:
        p = float(p)
        if not 0.0 < p < 1.0:
            raise DomainError(f"quantile requires 0 < p < 1, got {p!r}")
        return self.from_standard(_std_ppf(self.family, self.shape_params, p))

    def isf(self, q: float) -> float:
        """Upper-tail quantile: the value ``t`` with ``sf(t) = q``."""
        q = float(q)
        if not 0.0 < q < 1.0:
            raise DomainError(f"isf requires 0 < q < 1, got {q!r}")
        return self.from_standard(_std_isf(self.family, self.shape_params, q))

    def __str__(self) -> str:
        args = ", ".join(f"{name}={value:g}" for name, value in zip(_PARAM_NAMES[self.family], self.params))
        return f"{self.family.value}({args})"


def make_distribution(family: Family | str, params) -> ContinuousPosterior:
    """Validate ``params`` for ``family`` and build the distribution.

    Parameter order: normal(mean, sd), exponential(rate), gamma(shape, rate),
    inverse_gamma(shape, scale), weibull(shape, scale), pareto(min, index).
    """
    try:
        family = Family(family)
    except ValueError:
        raise DomainError(f"unknown distribution family {family!r}") from None
    names = _PARAM_NAMES[family]
    params = tuple(float(v) for v in params)
    if len(params) != len(names):
        raise DomainError(f"{family.value} takes {len(names)} parameters {names}, got {len(params)}")
    for name, value in zip(names, params):
        if not math.isfinite(value):
            raise DomainError(f"{family.value} parameter {name!r} must be finite, got {value!r}")
        if name != "mean" and value <= 0.0:
            raise DomainError(f"{family.value} parameter {name!r} must be > 0, got {value!r}")
    return ContinuousPosterior(family, params)


def cdf(d: ContinuousPosterior, t: float) -> float:
    return d.cdf(t)


def quantile(d: ContinuousPosterior, p: float) -> float:
    return d.quantile(p)


def log_pdf(d: ContinuousPosterior, t: float) -> float:
    return d.log_pdf(t)
