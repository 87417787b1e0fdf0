from fractions import Fraction

import pytest

from qschwarz.errors import LevelOutOfRange
from qschwarz.forms import (
    FormId,
    discriminant,
    eisenstein_E2,
    eisenstein_E4,
    eta,
    form,
    hauptmodul,
    j_invariant,
    lambda_from_eta,
    lambda_series,
    legendre_5,
    sigma_k,
    theta,
    theta_from_eta,
)
from qschwarz.qseries import QSeries, leading
from qschwarz.registry import FormRegistry

F = Fraction


def integer_coeffs(a):
    return [int(c) for _, c in a.terms]


def test_sigma_k():
    assert [sigma_k(1, n) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]
    assert sigma_k(3, 2) == 9
    assert sigma_k(3, 6) == 1 + 8 + 27 + 216
    with pytest.raises(ValueError):
        sigma_k(3, 0)


def test_eisenstein():
    assert integer_coeffs(eisenstein_E4(4)) == [1, 240, 2160, 6720]
    assert integer_coeffs(eisenstein_E2(4)) == [1, -24, -72, -96]
    assert eisenstein_E4(4).trunc == 4


def test_eta_is_pentagonal():
    e = eta(6)
    assert e.terms == (
        (F(1, 24), F(1)),
        (F(25, 24), F(-1)),
        (F(49, 24), F(-1)),
        (F(121, 24), F(1)),
    )
    assert e.trunc == 6


def test_discriminant():
    assert discriminant(6).terms == (
        (F(1), F(1)), (F(2), F(-24)), (F(3), F(252)), (F(4), F(-1472)), (F(5), F(4830)),
    )


def test_discriminant_over_eta_power():
    assert discriminant(8) / eta(8) ** 24 == QSeries.constant(1, 7)


def test_lambda():
    lam = lambda_series(F(7, 2))
    assert lam.terms == (
        (F(1, 2), F(16)), (F(1), F(-128)), (F(3, 2), F(704)),
        (F(2), F(-3072)), (F(5, 2), F(11488)), (F(3), F(-38400)),
    )
    assert lam.trunc == F(7, 2)


def test_j_invariant():
    j = j_invariant(3)
    assert j.terms == ((F(-1), F(1)), (F(0), F(744)), (F(1), F(196884)), (F(2), F(21493760)))


def test_theta_leading_terms():
    assert leading(theta(2, 3)) == (F(1, 8), F(2))
    assert theta(3, 3).terms[:2] == ((F(0), F(1)), (F(1, 2), F(2)))
    assert theta(4, 3).terms[:2] == ((F(0), F(1)), (F(1, 2), F(-2)))
    with pytest.raises(ValueError):
        theta(1, 3)


@pytest.mark.parametrize("j", [2, 3, 4])
def test_theta_eta_quotients(j):
    assert theta_from_eta(j, 20) == theta(j, 20)
    assert theta_from_eta(j, 20).trunc == 20


def test_lambda_eta_quotient():
    assert lambda_from_eta(10) == lambda_series(10)


def test_jacobi_quartic():
    t2, t3, t4 = (theta(j, 20) for j in (2, 3, 4))
    assert t3 ** 4 == t2 ** 4 + t4 ** 4


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_hauptmodul_leading(m):
    f = hauptmodul(m, 6)
    expected = 16 if m == 2 else 1
    assert leading(f) == (F(1, m), F(expected))
    assert f.trunc == 6


def test_hauptmodul_f5_first_terms():
    # q^(1/5) (1 - q)(1 - q^2)^-1 (1 - q^3)^-1 (1 - q^4) ...
    f = hauptmodul(5, F(16, 5))
    assert f.terms == ((F(1, 5), F(1)), (F(6, 5), F(-1)), (F(11, 5), F(1)))


def test_hauptmodul_level_out_of_range():
    with pytest.raises(LevelOutOfRange) as exc:
        hauptmodul(6, 3)
    assert exc.value.m == 6


def test_legendre_5():
    assert [legendre_5(n) for n in range(6)] == [0, 1, -1, -1, 1, 0]


def test_form_dispatch():
    assert form("E4", 3) == eisenstein_E4(3)
    assert form(FormId.LAMBDA, 2) == lambda_series(2)
    with pytest.raises(ValueError):
        form("E6", 3)
    with pytest.raises(ValueError):
        form("E4", 0)


def test_registry_memoizes():
    FormRegistry.clear()
    first = eisenstein_E4(5)
    assert (FormId.E4.value, F(5)) in FormRegistry.keys()
    assert eisenstein_E4(5) is first


def test_registry_drops_oldest_when_full(monkeypatch):
    monkeypatch.setattr(FormRegistry, "max_entries", 2)
    FormRegistry.clear()
    for order in (3, 4, 5):
        eisenstein_E4(order)
    assert FormRegistry.keys() == [(FormId.E4.value, F(4)), (FormId.E4.value, F(5))]
    FormRegistry.clear()
