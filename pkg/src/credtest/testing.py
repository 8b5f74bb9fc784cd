"""Decision rules built on credible sets.

* the three-decision test of a point null against directional alternatives,
  whose Bayes rule under a weighted 0-1 loss inverts the central interval;
* the Pereira-Stern evidence measure and the test that minimises the
  sample-dependent Madruga-Esteves-Wechsler loss (an inverted HPD set);
* weighted 0-1 Bayes tests of composite hypotheses.

Every rule rejects only on a strict inequality, so boundary ties accept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

from .credible import CredibleSet, SetKind, central_interval, check_alpha, level_endpoints
from .dist import ContinuousPosterior, ShapeClass
from .errors import DomainError, UnsupportedShapeError

_DEGENERATE_MASS = 1e-12


class ThreeWayDecision(IntEnum):
    """Accept ``theta < theta0`` (-1), ``theta = theta0`` (0) or ``theta > theta0`` (1)."""

    BELOW = -1
    NULL = 0
    ABOVE = 1


class Decision(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"


@dataclass(frozen=True)
class MEWLoss:
    """Constants ``a, b, c > 0`` of the Madruga-Esteves-Wechsler loss."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"MEW loss constant {name} must be finite and > 0, got {value!r}")
        if not 0.0 < self.threshold < 1.0:
            raise DomainError(f"MEW threshold (b + c) / (a + c) = {self.threshold!r} must lie in (0, 1)")

    @property
    def threshold(self) -> float:
        return (self.b + self.c) / (self.a + self.c)


@dataclass(frozen=True)
class HypothesisRegion:
    """A composite hypothesis given as disjoint, sorted closed intervals."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        intervals = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        if not intervals:
            raise DomainError("hypothesis region needs at least one interval")
        for lo, hi in intervals:
            if math.isnan(lo) or math.isnan(hi) or lo > hi:
                raise DomainError(f"malformed interval ({lo!r}, {hi!r})")
        for (_, prev_hi), (lo, _) in zip(intervals, intervals[1:]):
            if lo <= prev_hi:
                raise DomainError("hypothesis region intervals must be disjoint and sorted")
        object.__setattr__(self, "intervals", intervals)


@dataclass(frozen=True)
class EvidenceReport:
    theta0: float
    ev_hpd: float
    ev_central: float


# ---------------------------------------------------------------------------
# three-decision problem
# ---------------------------------------------------------------------------


def expected_posterior_loss_L1(
    d: ContinuousPosterior, theta0: float, alpha: float, phi: ThreeWayDecision | int
) -> float:
    """Posterior expected loss of decision ``phi`` under the directional 0-1 loss.

    Accepting the null costs ``alpha / 2`` whenever ``theta != theta0`` (almost
    surely); choosing one direction costs 1 when theta lies on the other side.
    """
    check_alpha(alpha)
    phi = ThreeWayDecision(phi)
    if phi is ThreeWayDecision.NULL:
        return alpha / 2.0
    if phi is ThreeWayDecision.BELOW:
        return d.sf(theta0)
    return d.cdf(theta0)


def three_decision_test(d: ContinuousPosterior, theta0: float, alpha: float) -> ThreeWayDecision:
    """Accept the null iff ``theta0`` is in the central ``1 - alpha`` interval, else pick a side."""
    interval = central_interval(d, alpha)
    lo, hi = interval.intervals[0]
    if lo > theta0:
        return ThreeWayDecision.ABOVE
    if hi < theta0:
        return ThreeWayDecision.BELOW
    return ThreeWayDecision.NULL


# ---------------------------------------------------------------------------
# Pereira-Stern evidence and the MEW test
# ---------------------------------------------------------------------------


def fbst_tangent_set(d: ContinuousPosterior, theta0: float) -> CredibleSet:
    """The set of parameter values whose density exceeds the density at ``theta0``.

    Reported as a closed interval; the excluded boundary has no mass. When
    ``theta0`` sits at the mode the set is empty and is returned as a
    zero-length interval at the mode with mass 0.
    """
    theta0 = float(theta0)
    support_lo, support_hi = d.support
    if not support_lo <= theta0 <= support_hi or math.isnan(theta0):
        raise DomainError(f"theta0={theta0!r} lies outside the support [{support_lo}, {support_hi}]")
    std = d.standard
    s = d.shape_params
    z0 = d.to_standard(theta0)
    log_k = std.log_pdf(z0, s)
    shape = d.shape_class
    level = math.exp(log_k - math.log(d.scale)) if log_k < math.inf else math.inf

    if log_k == -math.inf:
        left, right = std.lo, std.hi
        mass = 1.0
    elif shape is ShapeClass.MONOTONE_DECREASING:
        left, right = std.lo, z0
        mass = std.cdf(z0, s)
    elif shape is ShapeClass.MONOTONE_INCREASING:
        left, right = z0, std.hi
        mass = std.sf(z0, s)
    elif shape in (ShapeClass.SYMMETRIC_UNIMODAL, ShapeClass.UNIMODAL_INTERIOR_MODE):
        mode = std.mode(s)
        if z0 == mode or log_k >= std.log_pdf(mode, s):
            left = right = mode
            mass = 0.0
        else:
            # theta0 is one endpoint by definition; solve only for the other
            left, right = level_endpoints(std, s, log_k)
            if z0 < mode:
                left = z0
            else:
                right = z0
            mass = 1.0 - std.cdf(left, s) - std.sf(right, s)
    else:
        raise UnsupportedShapeError(f"no tangent set for shape class {shape!r}")

    mass = min(max(mass, 0.0), 1.0)
    interval = (d.from_standard(left), d.from_standard(right))
    one_sided = shape in (ShapeClass.MONOTONE_DECREASING, ShapeClass.MONOTONE_INCREASING)
    return CredibleSet(SetKind.HPD, (interval,), mass, mass, level, one_sided)


def fbst_evidence(d: ContinuousPosterior, theta0: float) -> float:
    """Pereira-Stern evidence: posterior mass outside the tangent set of ``theta0``."""
    return 1.0 - fbst_tangent_set(d, theta0).achieved_mass


def central_evidence(d: ContinuousPosterior, theta0: float) -> float:
    """Posterior mass outside the largest central interval that excludes ``theta0``."""
    return min(1.0, 2.0 * min(d.cdf(theta0), d.sf(theta0)))


def evidence_report(d: ContinuousPosterior, theta0: float) -> EvidenceReport:
    return EvidenceReport(float(theta0), fbst_evidence(d, theta0), central_evidence(d, theta0))


def mew_test(d: ContinuousPosterior, theta0: float, loss: MEWLoss) -> Decision:
    """Reject iff the Pereira-Stern evidence falls strictly below ``(b + c) / (a + c)``."""
    if fbst_evidence(d, theta0) < loss.threshold:
        return Decision.REJECT
    return Decision.ACCEPT


# ---------------------------------------------------------------------------
# composite hypotheses
# ---------------------------------------------------------------------------


def region_probability(d: ContinuousPosterior, region: HypothesisRegion) -> float:
    """Posterior probability of the region, summed over its intervals."""
    total = 0.0
    for lo, hi in region.intervals:
        # difference the smaller tails to keep precision in either direction
        upper_cdf = d.cdf(hi)
        if upper_cdf <= 0.5:
            total += upper_cdf - d.cdf(lo)
        else:
            total += d.sf(lo) - d.sf(hi)
    return min(max(total, 0.0), 1.0)


def composite_bayes_test(
    d: ContinuousPosterior, region: HypothesisRegion, loss_a: float, loss_b: float
) -> Decision:
    """Bayes rule for the null ``theta in region`` under a weighted 0-1 loss.

    ``loss_a`` is the cost of rejecting a true null, ``loss_b`` of accepting a
    false one. The null is accepted iff its posterior probability is at least
    ``loss_b / (loss_a + loss_b)``.
    """
    for name, value in (("loss_a", loss_a), ("loss_b", loss_b)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    prob = region_probability(d, region)
    if prob <= _DEGENERATE_MASS or prob >= 1.0 - _DEGENERATE_MASS:
        raise DomainError(f"hypothesis region has degenerate posterior mass {prob!r}")
    if prob >= loss_b / (loss_a + loss_b):
        return Decision.ACCEPT
    return Decision.REJECT
