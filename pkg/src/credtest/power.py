"""Monte Carlo size and power of tests that invert central or HPD sets.

Each replication draws its data from its own counter-based Philox stream. The
stream key mixes the master seed, the test and the bit pattern of the true
parameter value; the replication index is the block counter. Results are
therefore identical however the work is ordered, split or parallelised, and
reordering the grid does not change any curve.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .conjugate import Scenario, posterior_from_data
from .credible import central_interval, check_alpha, hpd_set
from .errors import DomainError

TESTS = ("central", "hpd")
_TEST_CODES = {"central": 1, "hpd": 2}
_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def substream_key(seed: int, test: str, theta: float) -> int:
    """128-bit Philox key for the (seed, test, parameter value) stream family."""
    theta_bits = struct.unpack("<Q", struct.pack("<d", float(theta)))[0]
    high = _splitmix64(_splitmix64(seed & _MASK64) ^ _TEST_CODES[test])
    low = _splitmix64(high ^ _splitmix64(theta_bits))
    return (high << 64) | low


def replication_rng(key: int, replication: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=key, counter=[0, 0, replication, 0]))


def default_grid(theta0: float) -> list[float]:
    """``theta0 * (0.2, 0.4, ..., 3.0)``."""
    return [theta0 * round(0.2 * i, 10) for i in range(1, 16)]


@dataclass(frozen=True)
class PowerStudyConfig:
    scenario: Scenario
    theta0: float
    theta_grid: tuple[float, ...]
    sample_size: int = 20
    replications: int = 20_000
    alpha: float = 0.05
    tests: tuple[str, ...] = TESTS
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "theta_grid", tuple(float(t) for t in self.theta_grid))
        object.__setattr__(self, "tests", tuple(self.tests))
        self.scenario.check_parameter(self.theta0)
        if not self.theta_grid:
            raise DomainError("theta_grid must not be empty")
        for theta in self.theta_grid:
            self.scenario.check_parameter(theta)
        if int(self.sample_size) != self.sample_size or self.sample_size < 1:
            raise DomainError(f"sample_size must be a positive integer, got {self.sample_size!r}")
        if int(self.replications) != self.replications or self.replications < 100:
            raise DomainError(f"replications must be an integer >= 100, got {self.replications!r}")
        check_alpha(self.alpha)
        if not self.tests or any(t not in TESTS for t in self.tests) or len(set(self.tests)) != len(self.tests):
            raise DomainError(f"tests must be a non-empty subset of {TESTS}, got {self.tests!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed <= _MASK64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class PowerCurve:
    test: str
    theta_values: tuple[float, ...]
    rejection_rates: tuple[float, ...]
    standard_errors: tuple[float, ...]
    replications: int


@dataclass(frozen=True)
class SideSummary:
    max_difference: float | None
    mean_difference: float | None
    n_points: int


@dataclass(frozen=True)
class ComparisonSummary:
    """Central minus HPD rejection rates, split by side of the null value."""

    theta0: float
    size_central: float | None
    size_hpd: float | None
    below: SideSummary
    above: SideSummary = field(default_factory=lambda: SideSummary(None, None, 0))


def binomial_se(rate: float, replications: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / replications)


def credible_set_for(test: str, posterior, alpha: float):
    if test == "central":
        return central_interval(posterior, alpha)
    if test == "hpd":
        return hpd_set(posterior, alpha)
    raise DomainError(f"unknown test {test!r}; expected one of {TESTS}")


def count_rejections(cfg: PowerStudyConfig, test: str, theta_true: float, start: int, stop: int) -> int:
    """Rejections among replications ``start <= r < stop`` at ``theta_true``."""
    scenario = cfg.scenario
    null_value = scenario.posterior_value(cfg.theta0)
    key = substream_key(cfg.seed, test, theta_true)
    rejected = 0
    for r in range(start, stop):
        x = scenario.sample(theta_true, cfg.sample_size, replication_rng(key, r))
        posterior = posterior_from_data(scenario, x)
        if not credible_set_for(test, posterior, cfg.alpha).contains(null_value):
            rejected += 1
    return rejected


def simulate_rejection_rate(cfg: PowerStudyConfig, test: str, theta_true: float) -> tuple[float, float]:
    """Monte Carlo rejection rate of ``test`` at ``theta_true`` and its binomial SE."""
    if test not in TESTS:
        raise DomainError(f"unknown test {test!r}; expected one of {TESTS}")
    cfg.scenario.check_parameter(theta_true)
    rate = count_rejections(cfg, test, theta_true, 0, cfg.replications) / cfg.replications
    return rate, binomial_se(rate, cfg.replications)


def _count_task(args) -> int:
    return count_rejections(*args)


def power_study(cfg: PowerStudyConfig, workers: int | None = None, chunks: int = 8) -> list[PowerCurve]:
    """One power curve per requested test over ``cfg.theta_grid``.

    With ``workers > 1`` replications are split into ``chunks`` blocks per
    grid point and counted in a process pool; the counts are identical to a
    sequential run.
    """
    R = cfg.replications
    cells = [(test, theta) for test in cfg.tests for theta in cfg.theta_grid]
    if workers is not None and workers > 1:
        bounds = np.linspace(0, R, chunks + 1).astype(int)
        tasks = [
            (cfg, test, theta, int(lo), int(hi))
            for test, theta in cells
            for lo, hi in zip(bounds[:-1], bounds[1:])
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_task, tasks))
        per_cell = [sum(counts[i * chunks:(i + 1) * chunks]) for i in range(len(cells))]
    else:
        per_cell = [count_rejections(cfg, test, theta, 0, R) for test, theta in cells]

    curves = []
    for j, test in enumerate(cfg.tests):
        block = per_cell[j * len(cfg.theta_grid):(j + 1) * len(cfg.theta_grid)]
        rates = tuple(c / R for c in block)
        curves.append(
            PowerCurve(test, cfg.theta_grid, rates, tuple(binomial_se(p, R) for p in rates), R)
        )
    return curves


def _side(diffs: list[float]) -> SideSummary:
    if not diffs:
        return SideSummary(None, None, 0)
    return SideSummary(max(diffs), sum(diffs) / len(diffs), len(diffs))


def summarize_comparison(curves: list[PowerCurve], theta0: float) -> ComparisonSummary:
    """Compare the central and HPD curves below, at and above ``theta0``."""
    by_test = {c.test: c for c in curves}
    if set(by_test) != set(TESTS):
        raise DomainError("summary needs one central and one hpd curve")
    central, hpd = by_test["central"], by_test["hpd"]
    if central.theta_values != hpd.theta_values:
        raise DomainError("central and hpd curves are on different grids")
    below, above = [], []
    size_c = size_h = None
    for theta, pc, ph in zip(central.theta_values, central.rejection_rates, hpd.rejection_rates):
        if theta < theta0:
            below.append(pc - ph)
        elif theta > theta0:
            above.append(pc - ph)
        else:
            size_c, size_h = pc, ph
    return ComparisonSummary(theta0, size_c, size_h, _side(below), _side(above))
