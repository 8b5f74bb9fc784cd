import math

import numpy as np
import pytest
import scipy.stats as ss
from hypothesis import given, settings
from hypothesis import strategies as st

from credtest import DomainError, Family, ShapeClass, cdf, log_pdf, make_distribution, quantile
from conftest import FAMILIES, random_params
from oracles import integrate_density

ROUND_TRIP_PS = (0.001, 0.01, 0.025, 0.5, 0.975, 0.99, 0.999)


def breakpoints(d):
    return [d.quantile(p) for p in (0.001, 0.1, 0.5, 0.9, 0.999)]


def scipy_twin(d):
    """The same distribution in scipy.stats, used as an independent reference."""
    p = d.params
    return {
        Family.NORMAL: lambda: ss.norm(p[0], p[1]),
        Family.EXPONENTIAL: lambda: ss.expon(scale=1 / p[0]),
        Family.GAMMA: lambda: ss.gamma(p[0], scale=1 / p[1]),
        Family.INVERSE_GAMMA: lambda: ss.invgamma(p[0], scale=p[1]),
        Family.WEIBULL: lambda: ss.weibull_min(p[0], scale=p[1]),
        Family.PARETO: lambda: ss.pareto(p[1], scale=p[0]),
    }[d.family]()


# ---------------------------------------------------------------- examples


def test_gamma_1_1_cdf():
    assert make_distribution("gamma", (1, 1)).cdf(1.0) == pytest.approx(0.6321205588285577, abs=1e-12)


def test_pareto_cdf_closed_form():
    d = make_distribution("pareto", (2, 4))
    assert d.cdf(2.0) == 0.0
    for x in (2.5, 3.0, 10.0):
        assert d.cdf(x) == pytest.approx(1 - (2 / x) ** 4, abs=1e-15)


def test_inverse_gamma_cdf_matches_quadrature():
    # closed form exp(-1) for shape 1; quadrature of x^-2 exp(-1/x) on (0, 1]
    # gives 0.36787944117146 (tests/oracles.py)
    d = make_distribution("inverse_gamma", (1, 1))
    assert d.cdf(1.0) == pytest.approx(math.exp(-1.0), abs=1e-12)
    assert abs(d.cdf(1.0) - integrate_density(d.pdf, 0.0, 1.0)) < 1e-10


def test_cdf_examples():
    assert cdf(make_distribution("normal", (0, 1)), 0.0) == 0.5
    assert cdf(make_distribution("exponential", (2,)), 0.0) == 0.0
    assert cdf(make_distribution("weibull", (2, 1)), 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)


def test_quantile_examples():
    assert quantile(make_distribution("normal", (0, 1)), 0.975) == pytest.approx(1.959963984540054, abs=1e-12)
    assert quantile(make_distribution("exponential", (1,)), 0.5) == pytest.approx(math.log(2), abs=1e-15)
    d = make_distribution("gamma", (3, 4.5))
    assert abs(d.cdf(d.quantile(0.95)) - 0.95) <= 1e-10


def test_log_pdf_examples():
    assert log_pdf(make_distribution("normal", (0, 1)), 0.0) == pytest.approx(-0.5 * math.log(2 * math.pi))
    assert log_pdf(make_distribution("pareto", (2, 4)), 1.5) == -math.inf
    assert log_pdf(make_distribution("gamma", (2, 1)), 3.0) == pytest.approx(math.log(3) - 3, abs=1e-14)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_quantile_domain(p):
    with pytest.raises(DomainError):
        make_distribution("gamma", (2, 1)).quantile(p)


@pytest.mark.parametrize(
    "family, params, offending",
    [
        ("normal", (0, 0), "sd"),
        ("normal", (math.nan, 1), "mean"),
        ("gamma", (-1, 1), "shape"),
        ("gamma", (1, 0), "rate"),
        ("inverse_gamma", (1, -2), "scale"),
        ("weibull", (0, 1), "shape"),
        ("pareto", (0, 3), "min"),
        ("pareto", (1, math.inf), "index"),
    ],
)
def test_construction_error_names_parameter(family, params, offending):
    with pytest.raises(DomainError, match=offending):
        make_distribution(family, params)


def test_wrong_parameter_count_and_family():
    with pytest.raises(DomainError):
        make_distribution("gamma", (1,))
    with pytest.raises(DomainError):
        make_distribution("student_t", (1,))


def test_cdf_clamps_outside_support():
    d = make_distribution("pareto", (2, 4))
    assert d.cdf(-5.0) == 0.0 and d.cdf(math.inf) == 1.0
    assert d.sf(1.0) == 1.0


# ---------------------------------------------------------------- shape classes


@pytest.mark.parametrize(
    "family, params, expected",
    [
        ("normal", (1, 2), ShapeClass.SYMMETRIC_UNIMODAL),
        ("exponential", (3,), ShapeClass.MONOTONE_DECREASING),
        ("gamma", (1.0, 2), ShapeClass.MONOTONE_DECREASING),
        ("gamma", (0.4, 2), ShapeClass.MONOTONE_DECREASING),
        ("gamma", (1.5, 2), ShapeClass.UNIMODAL_INTERIOR_MODE),
        ("inverse_gamma", (0.5, 2), ShapeClass.UNIMODAL_INTERIOR_MODE),
        ("weibull", (2.5, 1), ShapeClass.UNIMODAL_INTERIOR_MODE),
        ("weibull", (0.7, 1), ShapeClass.MONOTONE_DECREASING),
        ("pareto", (2, 4), ShapeClass.MONOTONE_DECREASING),
    ],
)
def test_shape_class_table(family, params, expected):
    assert make_distribution(family, params).shape_class is expected


# ---------------------------------------------------------------- reference values


def test_agrees_with_scipy_stats(rng):
    for family in FAMILIES:
        for _ in range(20):
            d = make_distribution(family, random_params(rng, family))
            ref = scipy_twin(d)
            for p in ROUND_TRIP_PS:
                x = ref.ppf(p)
                assert d.cdf(x) == pytest.approx(ref.cdf(x), abs=1e-12)
                assert d.sf(x) == pytest.approx(ref.sf(x), rel=1e-9, abs=1e-13)
                assert d.log_pdf(x) == pytest.approx(ref.logpdf(x), rel=1e-10, abs=1e-10)
                assert d.quantile(p) == pytest.approx(x, rel=1e-9)


# ---------------------------------------------------------------- invariants


@pytest.mark.parametrize("family", FAMILIES)
def test_round_trip(family, rng):
    for _ in range(25):
        d = make_distribution(family, random_params(rng, family))
        for p in ROUND_TRIP_PS:
            assert abs(d.cdf(d.quantile(p)) - p) <= 1e-10
            assert abs(d.sf(d.isf(p)) - p) <= 1e-10


@settings(max_examples=150, deadline=None)
@given(
    family=st.sampled_from(FAMILIES),
    seed=st.integers(0, 2**32 - 1),
    p=st.floats(1e-9, 1 - 1e-9),
)
def test_quantile_inverts_cdf(family, seed, p):
    d = make_distribution(family, random_params(np.random.default_rng(seed), family))
    x = d.quantile(p)
    c = d.cdf(x)
    if 1e-12 < c < 1 - 1e-12:
        assert d.quantile(c) == pytest.approx(x, rel=1e-9, abs=1e-300)


@settings(max_examples=150, deadline=None)
@given(
    family=st.sampled_from(FAMILIES),
    seed=st.integers(0, 2**32 - 1),
    p1=st.floats(1e-6, 1 - 1e-6),
    p2=st.floats(1e-6, 1 - 1e-6),
)
def test_cdf_and_quantile_monotone(family, seed, p1, p2):
    d = make_distribution(family, random_params(np.random.default_rng(seed), family))
    lo, hi = sorted((p1, p2))
    assert d.quantile(lo) <= d.quantile(hi)
    assert d.cdf(d.quantile(lo)) <= d.cdf(d.quantile(hi))


def test_cdf_limits(rng):
    for family in FAMILIES:
        d = make_distribution(family, random_params(rng, family))
        lo, hi = d.support
        assert d.cdf(lo) == 0.0 and d.cdf(hi) == 1.0


def test_density_is_derivative_of_cdf(rng):
    """Five-point differences of the smaller tail against exp(log_pdf) at 200 points."""
    checked = 0
    while checked < 200:
        family = FAMILIES[checked % len(FAMILIES)]
        d = make_distribution(family, random_params(rng, family))
        p = float(rng.uniform(0.01, 0.99))
        x = d.quantile(p)
        spread = d.quantile(0.75) - d.quantile(0.25)
        h = 1e-3 * min(spread, x - d.support[0])
        tail = d.cdf if p < 0.5 else (lambda t: -d.sf(t))
        deriv = (-tail(x + 2 * h) + 8 * tail(x + h) - 8 * tail(x - h) + tail(x - 2 * h)) / (12 * h)
        assert deriv == pytest.approx(d.pdf(x), rel=1e-6), (d, x)
        checked += 1


@pytest.mark.parametrize("family", FAMILIES)
def test_density_integrates_to_one(family, rng):
    for _ in range(10):
        d = make_distribution(family, random_params(rng, family))
        lo, hi = d.support
        assert integrate_density(d.pdf, lo, hi, breakpoints(d), tol=1e-10) == pytest.approx(1.0, abs=1e-6)


def test_shape_class_honesty(rng):
    for _ in range(200):
        family = FAMILIES[rng.integers(len(FAMILIES))]
        d = make_distribution(family, random_params(rng, family))
        if d.shape_class in (ShapeClass.UNIMODAL_INTERIOR_MODE, ShapeClass.SYMMETRIC_UNIMODAL):
            m = d.mode
            delta = 1e-6 * (d.quantile(0.75) - d.quantile(0.25))
            assert d.log_pdf(m) >= d.log_pdf(m - delta)
            assert d.log_pdf(m) >= d.log_pdf(m + delta)
            assert d.support[0] < m < d.support[1]
        elif d.shape_class is ShapeClass.MONOTONE_DECREASING:
            grid = [d.quantile(p) for p in np.linspace(0.001, 0.999, 100)]
            dens = [d.log_pdf(t) for t in grid]
            assert all(b <= a for a, b in zip(dens, dens[1:]))


def test_is_immutable():
    d = make_distribution("gamma", (3, 4.5))
    with pytest.raises(AttributeError):
        d.params = (1, 1)
