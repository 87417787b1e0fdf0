from fractions import Fraction

import pytest
from hypothesis import given

from qschwarz.errors import DivisionByZeroSeries, InsufficientPrecision, UnsupportedGrid, ZeroSeries
from qschwarz.qseries import (
    QSeries,
    as_fraction,
    compose_rational,
    d_op,
    inverse,
    leading,
    shift,
    sqrt_monic,
    substitute_power,
    twist_half,
)
from strategies import exponents, nonunits, series, units

F = Fraction


def coeffs(a: QSeries):
    return [(str(e), str(c)) for e, c in a.terms]


class TestConstruction:
    def test_zero_terms_and_terms_past_trunc_are_dropped(self):
        a = QSeries.from_terms([(0, 1), (1, 0), (2, 5), (3, 7)], 3)
        assert a.terms == ((F(0), F(1)), (F(2), F(5)))
        assert a.trunc == 3

    def test_grid_is_compacted(self):
        a = QSeries.from_terms([(1, 2), (2, 3)], 4, grid=6)
        assert a.grid == 1
        b = QSeries.from_terms([(F(1, 2), 1)], 2)
        assert b.grid == 2

    def test_repeated_exponents_add(self):
        a = QSeries.from_terms([(1, 2), (1, -2), (F(1, 3), 1)], 2)
        assert a.terms == ((F(1, 3), F(1)),)

    def test_coefficient_and_valuation(self):
        a = QSeries.from_terms([(F(1, 2), 3), (2, -1)], 5)
        assert a.valuation() == F(1, 2)
        assert a.coefficient(F(1, 2)) == 3
        assert a.coefficient(1) == 0
        assert a.coefficient(F(1, 3)) == 0
        with pytest.raises(InsufficientPrecision):
            a.coefficient(5)

    def test_zero_series_valuation_is_trunc(self):
        z = QSeries.zero(F(7, 2))
        assert z.is_zero()
        assert z.valuation() == F(7, 2)
        with pytest.raises(ZeroSeries):
            leading(z)

    def test_immutable(self):
        a = QSeries.constant(1, 2)
        with pytest.raises(AttributeError):
            a._trunc = 5

    def test_as_fraction_rejects_decimals(self):
        assert as_fraction("3/4") == F(3, 4)
        assert as_fraction("-2") == -2
        for bad in ("0.5", "1e3", "", "x"):
            with pytest.raises(ValueError):
                as_fraction(bad)


class TestTruncation:
    def test_add_takes_min(self):
        a = QSeries.from_terms([(0, 1)], 3)
        b = QSeries.from_terms([(1, 1)], F(5, 2))
        assert (a + b).trunc == F(5, 2)

    def test_mul_rule(self):
        a = QSeries.from_terms([(F(1, 2), 1)], 3)
        b = QSeries.from_terms([(0, 1), (1, 1)], 2)
        assert (a * b).trunc == F(5, 2)

    def test_inverse_rule(self):
        b = QSeries.from_terms([(1, 2), (2, 1)], 5)
        inv = inverse(b)
        assert inv.trunc == 3
        assert leading(inv) == (F(-1), F(1, 2))
        assert b * inv == QSeries.constant(1, 4)

    def test_div_rule_never_over_reports(self):
        a = QSeries.from_terms([(2, 1)], 5)
        b = QSeries.from_terms([(1, 1)], 3)
        # min(5 - 1, 3 - 2 + 2)
        assert (a / b).trunc == 3

    def test_truncate(self):
        a = QSeries.from_integer_list([1, 2, 3, 4], 4)
        assert a.truncate(2).terms == ((F(0), F(1)), (F(1), F(2)))
        assert a.truncate(10) is a


class TestOperations:
    def test_geometric_series(self):
        g = inverse(QSeries.from_terms([(0, 1), (1, -1)], 6))
        assert g.trunc == 6
        assert [c for _, c in g.terms] == [1] * 6

    def test_inverse_of_zero_raises(self):
        with pytest.raises(DivisionByZeroSeries):
            inverse(QSeries.zero(3))
        with pytest.raises(DivisionByZeroSeries):
            QSeries.constant(1, 3) / QSeries.zero(3)

    def test_powers(self):
        a = QSeries.from_terms([(0, 1), (1, 1)], 5)
        assert [c for _, c in (a ** 3).terms] == [1, 3, 3, 1]
        assert a ** 0 == QSeries.constant(1, 5)
        b = QSeries.from_terms([(0, 1), (1, -1)], 4)
        assert [c for _, c in (b ** -1).terms] == [1, 1, 1, 1]

    def test_scalar_arithmetic(self):
        a = QSeries.from_terms([(0, 2), (1, 4)], 3)
        assert (a / 2).terms == ((F(0), F(1)), (F(1), F(2)))
        assert (1 - a).terms == ((F(0), F(-1)), (F(1), F(-4)))
        assert (a * 0).is_zero()
        with pytest.raises(ZeroDivisionError):
            a / 0

    def test_substitute_power(self):
        a = QSeries.from_terms([(F(1, 2), 1), (1, 3)], 2)
        b = substitute_power(a, 2)
        assert b.terms == ((F(1), F(1)), (F(2), F(3)))
        assert b.trunc == 4
        c = substitute_power(a, F(1, 3))
        assert c.terms == ((F(1, 6), F(1)), (F(1, 3), F(3)))
        assert c.trunc == F(2, 3)

    def test_twist_half(self):
        a = QSeries.from_terms([(F(1, 2), 16), (1, -128), (F(3, 2), 704)], 2)
        assert twist_half(a).terms == ((F(1, 2), F(-16)), (F(1), F(-128)), (F(3, 2), F(-704)))
        integral = QSeries.from_terms([(0, 1), (1, 1)], 2)
        assert twist_half(integral) == integral
        with pytest.raises(UnsupportedGrid):
            twist_half(QSeries.from_terms([(F(1, 3), 1)], 2))

    def test_d_op(self):
        a = QSeries.from_terms([(0, 5), (F(1, 2), 2), (3, 1)], 4)
        assert d_op(a).terms == ((F(1, 2), F(1)), (F(3), F(3)))

    def test_sqrt_monic(self):
        a = QSeries.from_terms([(2, 4), (3, 8), (4, 4)], 6)
        u, a0, half_v = sqrt_monic(a)
        assert a0 == 4
        assert half_v == 1
        assert u == QSeries.from_terms([(0, 1), (1, 1)], 4)
        assert u.trunc == 4

    def test_shift(self):
        a = QSeries.from_terms([(0, 1), (1, 2)], 3)
        b = shift(a, F(-1, 4))
        assert b.terms == ((F(-1, 4), F(1)), (F(3, 4), F(2)))
        assert b.trunc == F(11, 4)

    def test_compose_rational(self):
        class Geometric:
            numerator = [0, 1]
            denominator = [1, -1]

        t = QSeries.from_terms([(1, 1)], 5)
        assert [c for _, c in compose_rational(Geometric, t).terms] == [1, 1, 1, 1]


class TestRingAxioms:
    @given(series(), series())
    def test_commutative(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(series(), series(), series())
    def test_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)

    @given(series(), series(), series())
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(series(), series())
    def test_leibniz(self, a, b):
        assert d_op(a * b) == d_op(a) * b + a * d_op(b)

    @given(series(), units())
    def test_division_by_unit_inverts_multiplication(self, a, u):
        assert (a / u) * u == a
        assert u * inverse(u) == QSeries.constant(1, u.trunc)

    @given(series(), nonunits())
    def test_division_by_nonunit_inverts_multiplication(self, a, b):
        quotient = a / b
        assert quotient * b == a
        assert quotient.trunc <= a.trunc - b.valuation()

    @given(units())
    def test_sqrt_squares_back(self, u):
        root, a0, half_v = sqrt_monic(u)
        assert half_v == 0
        assert a0 * root * root == u


class TestSubstitutions:
    @given(series(), series(), exponents)
    def test_substitute_power_is_a_ring_homomorphism(self, a, b, c):
        assert substitute_power(a + b, c) == substitute_power(a, c) + substitute_power(b, c)
        assert substitute_power(a * b, c) == substitute_power(a, c) * substitute_power(b, c)
        assert substitute_power(a, c).trunc == a.trunc * c

    @given(series(), exponents)
    def test_d_commutes_with_substitution(self, a, c):
        assert d_op(substitute_power(a, c)) == c * substitute_power(d_op(a), c)

    @given(series(grid=2))
    def test_twist_half_is_an_involution(self, a):
        assert twist_half(twist_half(a)) == a
        assert twist_half(twist_half(a)).trunc == a.trunc

    @given(series(grid=2), series(grid=2))
    def test_twist_half_is_multiplicative(self, a, b):
        assert twist_half(a * b) == twist_half(a) * twist_half(b)


class TestSerialization:
    def test_json_shape(self):
        a = QSeries.from_terms([(F(1, 2), F(-3, 4)), (0, 1)], F(5, 2))
        assert a.to_json() == {"grid": 2, "trunc": "5/2", "terms": [["0", "1"], ["1/2", "-3/4"]]}
        assert a.dumps() == '{"grid": 2, "terms": [["0", "1"], ["1/2", "-3/4"]], "trunc": "5/2"}'

    @given(series())
    def test_from_json(self, a):
        b = QSeries.from_json(a.to_json())
        assert b == a
        assert b.trunc == a.trunc
        assert b.grid == a.grid
