from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qschwarz.config import get_settings
from qschwarz.errors import DegenerateMobius, DivisionByZeroSeries, InsufficientPrecision
from qschwarz.forms import eisenstein_E4, hauptmodul, lambda_series
from qschwarz.qseries import QSeries, leading, substitute_power
from qschwarz.schwarzian import (
    compose_mobius,
    justified_order,
    mobius_apply,
    normalized_schwarzian,
    verify_schwarz_eq,
)
from strategies import exponents, mobius_matrices, nonunits

F = Fraction
Q = QSeries.from_terms([(1, 1)], 12)


def test_monomial_has_constant_schwarzian():
    h = QSeries.from_terms([(2, 1)], 10)
    sigma = normalized_schwarzian(h)
    assert sigma.terms == ((F(0), F(-2)),)
    assert sigma.trunc == 8


def test_constant_has_no_schwarzian():
    with pytest.raises(DivisionByZeroSeries):
        normalized_schwarzian(QSeries.constant(3, 5))


def test_lambda_identity():
    report = verify_schwarz_eq(lambda_series(F(21, 2)), F(1, 2), 10)
    assert report.ok
    assert report.residual.is_zero()
    assert report.checked_order == 10


def test_lambda_schwarzian_is_minus_e4_over_8():
    sigma = normalized_schwarzian(lambda_series(F(13, 2)))
    assert sigma == -eisenstein_E4(6) / 8


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_hauptmodul_identities(m):
    report = verify_schwarz_eq(hauptmodul(m, 10 + F(1, m)), F(1, m), 10)
    assert report.ok


def test_wrong_r_leaves_constant_residual():
    report = verify_schwarz_eq(lambda_series(F(11, 2)), F(1, 3), 5)
    assert not report.ok
    assert report.residual.coefficient(0) == F(1, 18) - F(1, 8)


def test_default_order_and_precision_guard():
    lam = lambda_series(3)
    assert justified_order(lam) == F(5, 2)
    assert verify_schwarz_eq(lam, F(1, 2)).checked_order == F(5, 2)
    with pytest.raises(InsufficientPrecision) as exc:
        verify_schwarz_eq(lam, F(1, 2), 10)
    assert exc.value.requested == 10
    with pytest.raises(ValueError):
        verify_schwarz_eq(lam, F(1, 2), 0)


def test_report_json():
    payload = verify_schwarz_eq(lambda_series(F(7, 2)), F(1, 2), 2).to_json()
    assert payload["r"] == "1/2"
    assert payload["ok"] is True
    assert payload["checked_order"] == "2"
    assert payload["residual"]["terms"] == []


@given(mobius_matrices())
def test_mobius_invariance_on_lambda(g):
    lam = lambda_series(F(13, 2))
    assert normalized_schwarzian(mobius_apply(g, lam)) == normalized_schwarzian(lam)


@given(nonunits(), mobius_matrices())
def test_mobius_invariance(h, g):
    sigma = normalized_schwarzian(h)
    moved = normalized_schwarzian(mobius_apply(g, h))
    assert moved == sigma
    assert moved.trunc == sigma.trunc


@given(mobius_matrices(), st.sampled_from([F(1, 2), F(1, 3), F(2, 3)]))
def test_verification_sees_through_mobius(g, r):
    lam = lambda_series(F(13, 2))
    moved = verify_schwarz_eq(mobius_apply(g, lam), r, 5)
    direct = verify_schwarz_eq(lam, r, 5)
    assert moved.ok == direct.ok
    assert moved.residual == direct.residual


def test_mobius_without_denominator():
    lam = lambda_series(F(13, 2))
    moved = mobius_apply((3, 7, 0, 2), lam)
    assert leading(moved) == (F(0), F(7, 2))
    assert normalized_schwarzian(moved) == normalized_schwarzian(lam)


def test_mobius_inversion():
    inv = mobius_apply((0, 1, 1, 0), lambda_series(5))
    assert leading(inv) == (F(-1, 2), F(1, 16))


def test_degenerate_mobius():
    with pytest.raises(DegenerateMobius):
        mobius_apply((1, 2, 2, 4), lambda_series(3))
    with pytest.raises(DegenerateMobius):
        compose_mobius((1, 0, 0, 1), (0, 0, 0, 0))


def test_compose_mobius():
    g1, g2 = (1, 1, 0, 1), (0, 1, 1, 0)
    assert compose_mobius(g1, g2) == (1, 1, 1, 0)
    lam = lambda_series(5)
    assert mobius_apply(compose_mobius(g1, g2), lam) == mobius_apply(g1, mobius_apply(g2, lam))


def test_substitution_scales_schwarzian():
    # sigma(h(q^c)) = c^2 sigma(h)(q^c)
    lam = lambda_series(F(13, 2))
    lhs = normalized_schwarzian(substitute_power(lam, 2))
    rhs = 4 * substitute_power(normalized_schwarzian(lam), 2)
    assert lhs == rhs


@given(nonunits(), exponents)
def test_substitution_cocycle(h, c):
    lhs = normalized_schwarzian(substitute_power(h, c))
    rhs = c * c * substitute_power(normalized_schwarzian(h), c)
    assert lhs == rhs


def test_schwarzian_of_q():
    # D q = q, so sigma(q) = 1 - 3/2
    sigma = normalized_schwarzian(Q)
    assert sigma == QSeries.constant(F(-1, 2), 11)
    assert sigma.trunc == 11


@given(mobius_matrices())
def test_mobius_images_of_q_have_constant_schwarzian(g):
    sigma = normalized_schwarzian(mobius_apply(g, Q))
    assert sigma.trunc == 11
    assert sigma == QSeries.constant(F(-1, 2), sigma.trunc)


def test_non_mobius_image_of_q_is_detected():
    sigma = normalized_schwarzian(QSeries.from_terms([(1, 1), (2, 1)], 6))
    assert sigma != QSeries.constant(F(-1, 2), sigma.trunc)
    assert sigma.coefficient(1) == 0
    assert sigma.coefficient(2) == -6


def test_default_order_follows_settings(monkeypatch):
    monkeypatch.setenv("QSCHWARZ_DEFAULT_ORDER", "4")
    get_settings.cache_clear()
    try:
        report = verify_schwarz_eq(lambda_series(F(21, 2)), F(1, 2))
        assert report.checked_order == 4
        assert report.ok
    finally:
        get_settings.cache_clear()
