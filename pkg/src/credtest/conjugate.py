"""Posteriors for one-parameter scale and rate models under Jeffreys priors.

All scale/rate parameters get the prior ``p(theta) ~ 1/theta``; the uniform
upper endpoint gets a conjugate Pareto prior. Each scenario reduces to a
closed-form posterior through its sufficient statistic:

========================================  ======================================
scenario                                   posterior
========================================  ======================================
normal_variance_known_mean(mu)            sigma^2 ~ inverse_gamma(n/2, sum((x-mu)^2)/2)
exponential_rate                          lambda ~ gamma(n, sum(x))
gamma_rate_known_shape(k)                 theta ~ gamma(n k, sum(x))
inverse_gamma_rate_known_shape(k)         beta ~ gamma(n k, sum(1/x))
weibull_transformed_rate_known_shape(k)   eta = lam^-k ~ gamma(n, sum(x^k))
uniform_upper_pareto(m, k)                theta ~ pareto(max(m, max x), k + n)
========================================  ======================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dist import ContinuousPosterior, Family, make_distribution
from .errors import DataError, DomainError


class ScenarioKind(str, Enum):
    NORMAL_VARIANCE_KNOWN_MEAN = "normal_variance_known_mean"
    EXPONENTIAL_RATE = "exponential_rate"
    GAMMA_RATE_KNOWN_SHAPE = "gamma_rate_known_shape"
    INVERSE_GAMMA_RATE_KNOWN_SHAPE = "inverse_gamma_rate_known_shape"
    WEIBULL_TRANSFORMED_RATE_KNOWN_SHAPE = "weibull_transformed_rate_known_shape"
    UNIFORM_UPPER_PARETO = "uniform_upper_pareto"


# names of the known constants each scenario needs, in order
FIXED_NAMES = {
    ScenarioKind.NORMAL_VARIANCE_KNOWN_MEAN: ("known_mean",),
    ScenarioKind.EXPONENTIAL_RATE: (),
    ScenarioKind.GAMMA_RATE_KNOWN_SHAPE: ("known_shape",),
    ScenarioKind.INVERSE_GAMMA_RATE_KNOWN_SHAPE: ("known_shape",),
    ScenarioKind.WEIBULL_TRANSFORMED_RATE_KNOWN_SHAPE: ("known_shape",),
    ScenarioKind.UNIFORM_UPPER_PARETO: ("pareto_m", "pareto_k"),
}


@dataclass(frozen=True)
class Scenario:
    """A sampling model with its known constants.

    The tested parameter is the variance for the normal model, the rate for the
    exponential and gamma models, the scale ``beta`` for the inverse gamma, the
    Weibull scale ``lam`` (tested through ``eta = lam ** -k``), and the upper
    endpoint for the uniform model.
    """

    kind: ScenarioKind
    fixed: tuple[float, ...] = ()

    def __post_init__(self):
        try:
            kind = ScenarioKind(self.kind)
        except ValueError:
            raise DomainError(f"unknown scenario {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        names = FIXED_NAMES[kind]
        fixed = tuple(float(v) for v in self.fixed)
        if len(fixed) != len(names):
            raise DomainError(f"{kind.value} needs constants {names}, got {len(fixed)} value(s)")
        for name, value in zip(names, fixed):
            if not math.isfinite(value):
                raise DomainError(f"{kind.value}: {name} must be finite, got {value!r}")
            if name != "known_mean" and value <= 0.0:
                raise DomainError(f"{kind.value}: {name} must be > 0, got {value!r}")
        object.__setattr__(self, "fixed", fixed)

    def posterior_value(self, theta: float) -> float:
        """Map a model parameter value onto the posterior's parameter."""
        if self.kind is ScenarioKind.WEIBULL_TRANSFORMED_RATE_KNOWN_SHAPE:
            self.check_parameter(theta)
            return theta ** -self.fixed[0]
        return theta

    def check_parameter(self, theta: float) -> None:
        if not (math.isfinite(theta) and theta > 0.0):
            raise DomainError(f"{self.kind.value}: parameter value must be finite and > 0, got {theta!r}")

    def sample(self, theta: float, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw ``n`` observations from the sampling model at parameter ``theta``."""
        self.check_parameter(theta)
        kind = self.kind
        if kind is ScenarioKind.NORMAL_VARIANCE_KNOWN_MEAN:
            return self.fixed[0] + math.sqrt(theta) * rng.standard_normal(n)
        if kind is ScenarioKind.EXPONENTIAL_RATE:
            return rng.standard_exponential(n) / theta
        if kind is ScenarioKind.GAMMA_RATE_KNOWN_SHAPE:
            return rng.standard_gamma(self.fixed[0], n) / theta
        if kind is ScenarioKind.INVERSE_GAMMA_RATE_KNOWN_SHAPE:
            return theta / rng.standard_gamma(self.fixed[0], n)
        if kind is ScenarioKind.WEIBULL_TRANSFORMED_RATE_KNOWN_SHAPE:
            return theta * rng.weibull(self.fixed[0], n)
        # uniform on (0, theta]; 1 - U avoids an exact zero
        return theta * (1.0 - rng.random(n))


def _as_sample(data) -> np.ndarray:
    values = np.asarray(data, dtype=float).ravel()
    if values.size == 0:
        raise DataError("sample is empty")
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise DataError(f"observation {i} is not finite: {float(values[i])!r}")
    return values


def posterior_from_data(scenario: Scenario, data) -> ContinuousPosterior:
    """Posterior of the scenario's parameter given the observed ``data``.

    Sufficient statistics use correctly rounded sums, so the result does not
    depend on the order of the observations.
    """
    x = _as_sample(data)
    n = x.size
    kind = scenario.kind
    if kind is not ScenarioKind.NORMAL_VARIANCE_KNOWN_MEAN:
        bad = x <= 0.0
        if bad.any():
            i = int(np.argmax(bad))
            raise DataError(f"{kind.value} requires positive observations; observation {i} is {float(x[i])!r}")

    if kind is ScenarioKind.NORMAL_VARIANCE_KNOWN_MEAN:
        ss = math.fsum((x - scenario.fixed[0]) ** 2)
        if ss == 0.0:
            raise DataError("all observations equal the known mean; the posterior is improper")
        return make_distribution(Family.INVERSE_GAMMA, (n / 2.0, ss / 2.0))
    if kind is ScenarioKind.EXPONENTIAL_RATE:
        return make_distribution(Family.GAMMA, (float(n), math.fsum(x)))
    if kind is ScenarioKind.GAMMA_RATE_KNOWN_SHAPE:
        return make_distribution(Family.GAMMA, (n * scenario.fixed[0], math.fsum(x)))
    if kind is ScenarioKind.INVERSE_GAMMA_RATE_KNOWN_SHAPE:
        return make_distribution(Family.GAMMA, (n * scenario.fixed[0], math.fsum(1.0 / x)))
    if kind is ScenarioKind.WEIBULL_TRANSFORMED_RATE_KNOWN_SHAPE:
        return make_distribution(Family.GAMMA, (float(n), math.fsum(x ** scenario.fixed[0])))
    m, k = scenario.fixed
    return make_distribution(Family.PARETO, (max(m, float(np.max(x))), k + n))
