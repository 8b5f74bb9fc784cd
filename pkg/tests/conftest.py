import math
import os
import sys

import numpy as np
import pytest

from credtest import make_distribution

sys.path.insert(0, os.path.dirname(__file__))

FAMILIES = ("normal", "exponential", "gamma", "inverse_gamma", "weibull", "pareto")


def _log_uniform(rng, lo, hi):
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def random_params(rng, family):
    if family == "normal":
        return (float(rng.uniform(-5, 5)), _log_uniform(rng, 0.1, 10))
    if family == "exponential":
        return (_log_uniform(rng, 0.1, 10),)
    if family == "gamma":
        return (_log_uniform(rng, 0.3, 50), _log_uniform(rng, 0.1, 10))
    if family == "inverse_gamma":
        return (_log_uniform(rng, 0.5, 50), _log_uniform(rng, 0.1, 10))
    if family == "weibull":
        return (float(rng.uniform(0.5, 5)), _log_uniform(rng, 0.1, 10))
    if family == "pareto":
        return (_log_uniform(rng, 0.1, 10), _log_uniform(rng, 0.5, 30))
    raise ValueError(family)


def random_posterior(rng, families=FAMILIES):
    family = families[rng.integers(len(families))]
    return make_distribution(family, random_params(rng, family))


def random_theta0(rng, d):
    """A null value inside the support, spread from the far tails to the centre."""
    return d.quantile(float(rng.uniform(0.0005, 0.9995)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
