import cmath
import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from qschwarz.catalog import RationalMap, build_h, entry
from qschwarz.errors import DomainError
from qschwarz.forms import eisenstein_E4, j_invariant, lambda_series
from qschwarz.numeric import (
    SAMPLE_POINTS,
    EvalConfig,
    TransformationLaw,
    eval_rational_map,
    eval_series,
    h234_value,
    h_laws,
    lambda_laws,
    lambda_value,
    schwarzian_fd,
)
from qschwarz.qseries import QSeries, twist_half

F = Fraction
CFG = EvalConfig()


def test_eval_constant():
    value, tail = eval_series(QSeries.constant(1, 5), 0.3 + 1j, CFG)
    assert value == 1
    assert tail == 1.0


def test_eval_is_linear():
    a, b = lambda_series(10), eisenstein_E4(10)
    tau = 0.2 + 1.1j
    lhs, _ = eval_series(a + 3 * b, tau, CFG)
    va, _ = eval_series(a, tau, CFG)
    vb, _ = eval_series(b, tau, CFG)
    assert abs(lhs - (va + 3 * vb)) < 1e-9 * max(1.0, abs(lhs))


def test_lambda_at_i():
    assert abs(lambda_value(1j, CFG) - 0.5) < 1e-12


def test_lambda_series_agrees_with_theta_quotient():
    lam = lambda_series(40)
    for tau in SAMPLE_POINTS:
        value, _ = eval_series(lam, tau, CFG)
        assert abs(value - lambda_value(tau, CFG)) < 1e-10


def test_j_at_10i():
    value, _ = eval_series(j_invariant(10), 10j, CFG)
    expected = math.exp(20 * math.pi) + 744
    assert abs(value / expected - 1) < 1e-12


def test_domain_guard():
    with pytest.raises(DomainError):
        eval_series(lambda_series(5), 0.1 + 0.2j, CFG)
    with pytest.raises(DomainError):
        lambda_laws(0.1 + 0.2j, CFG)
    # 3 + 0.5i is fine but -1/tau is not
    with pytest.raises(DomainError):
        lambda_laws(3 + 0.5j, CFG)


def test_config_validation():
    with pytest.raises(ValidationError):
        EvalConfig(terms=0)
    with pytest.raises(ValidationError):
        EvalConfig(tol=-1.0)


@pytest.mark.parametrize("tau", SAMPLE_POINTS)
def test_lambda_laws(tau):
    report = lambda_laws(tau, CFG)
    assert report.ok
    assert len(report.results) == 5


@pytest.mark.parametrize("tau", SAMPLE_POINTS)
def test_h234_laws(tau):
    report = h_laws(tau, CFG)
    assert report.ok
    assert [r.name for r in report.results] == ["tau+1", "-1/tau", "tau/(tau+1)", "-1/(tau+1)", "(1+tau)/(-tau)"]


def test_laws_from_the_series():
    assert lambda_laws(SAMPLE_POINTS[0], CFG, series=lambda_series(40)).ok


def test_perturbed_series_breaks_laws():
    perturbed = lambda_series(40) + QSeries.monomial(1, F(1, 100), 40)
    report = lambda_laws(SAMPLE_POINTS[0], CFG, series=perturbed)
    assert not report.ok
    assert not report.results[0].ok


def test_wrong_law_fails():
    wrong = [TransformationLaw(name="tau+1", act_tau=lambda t: t + 1, act_value=lambda v: v)]
    report = h_laws(SAMPLE_POINTS[0], CFG, laws=wrong)
    assert not report.ok
    assert report.to_json()["results"][0]["ok"] is False


def test_twist_half_is_tau_plus_one():
    lam = lambda_series(40)
    for tau in SAMPLE_POINTS:
        shifted, _ = eval_series(lam, tau + 1, CFG)
        twisted, _ = eval_series(twist_half(lam), tau, CFG)
        assert abs(shifted - twisted) < 1e-10


def test_rational_map_evaluation():
    rmap = RationalMap(numerator=[0, 1], denominator=[1, -1])
    assert eval_rational_map(rmap, 0.5) == pytest.approx(1.0)
    assert eval_rational_map(rmap, 2j) == pytest.approx(2j / (1 - 2j))


@pytest.mark.parametrize("tau", [2j, 0.3 + 1.8j])
def test_h234_series_matches_rational_map(tau):
    value, _ = eval_series(build_h(entry(2, 3, 4), 30), tau, CFG)
    expected = h234_value(tau, CFG)
    assert abs(value - expected) < 1e-9 * max(1.0, abs(expected))


def test_finite_difference_schwarzian():
    lam = lambda_series(40)
    fine = schwarzian_fd(lam, F(1, 2), 1.3j, 1e-3, CFG)
    coarse = schwarzian_fd(lam, F(1, 2), 1.3j, 2e-3, CFG)
    assert fine.deviation < 1e-5
    assert 3.0 < coarse.deviation / fine.deviation < 5.0
    # {lambda, tau} = (pi^2 / 2) E4
    assert cmath.isclose(fine.expected, (math.pi ** 2 / 2) * eval_series(eisenstein_E4(40), 1.3j, CFG)[0])


def test_finite_difference_wrong_r():
    report = schwarzian_fd(lambda_series(40), F(1, 3), 1.3j, 1e-3, CFG)
    assert report.deviation > 0.5
    assert report.to_json()["r"] == "1/3"
