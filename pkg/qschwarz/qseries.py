"""Exact truncated Puiseux series in q.

A ``QSeries`` is a finite map from rational exponents to rational
coefficients together with a truncation ``trunc``: the series is known
modulo ``q^trunc``. Exponents are stored as integer indices on a grid
``M`` (index ``n`` means exponent ``n/M``) and the grid is kept minimal,
so two equal series always have the same representation once truncated
to the same order.

Truncation is tracked pessimistically. Every operation reports the
largest order its inputs justify and never more:

* ``a + b``            -> ``min(a.trunc, b.trunc)``
* ``a * b``            -> ``min(a.trunc + val(b), b.trunc + val(a))``
* ``1 / b``            -> ``b.trunc - 2 val(b)``
* ``a / b``            -> ``min(a.trunc - val(b), b.trunc - 2 val(b) + val(a))``
* ``D a``              -> ``a.trunc``
* ``a(q^c)``           -> ``c * a.trunc``

where ``val`` is the least stored exponent (``val(0) = trunc``).
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Optional, Protocol, Sequence, Tuple, Union

from .errors import DivisionByZeroSeries, InsufficientPrecision, UnsupportedGrid, ZeroSeries

Exponent = Fraction
Scalar = Union[int, Fraction]
Term = Tuple[Fraction, Fraction]


def as_fraction(value: Union[str, int, Fraction]) -> Fraction:
    """Parse ``value`` as an exact rational (``"p/q"``, ``"p"``, int or Fraction)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _bound(grid: int, trunc: Fraction) -> int:
    # indices n with n/grid < trunc are exactly n < ceil(trunc * grid)
    return math.ceil(trunc * grid)


class QSeries:
    """Immutable truncated series ``sum c_e q^e + O(q^trunc)``."""

    __slots__ = ("_grid", "_coeffs", "_trunc")

    def __init__(self, grid: int, coeffs: Dict[int, Fraction], trunc: Fraction):
        # Internal constructor: callers go through _make / from_terms.
        object.__setattr__(self, "_grid", grid)
        object.__setattr__(self, "_coeffs", coeffs)
        object.__setattr__(self, "_trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def _make(cls, grid: int, coeffs: Dict[int, Scalar], trunc: Fraction) -> "QSeries":
        trunc = Fraction(trunc)
        bound = _bound(grid, trunc)
        kept = {n: Fraction(c) for n, c in coeffs.items() if c != 0 and n < bound}
        g = grid
        for n in kept:
            g = math.gcd(g, n)
            if g == 1:
                break
        if g > 1:
            kept = {n // g: c for n, c in kept.items()}
            grid //= g
        return cls(grid, kept, trunc)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Scalar, Scalar]], trunc: Scalar, grid: int = 1) -> "QSeries":
        """Build a series from ``(exponent, coefficient)`` pairs; repeated exponents add up."""
        pairs = [(Fraction(e), Fraction(c)) for e, c in terms]
        for e, _ in pairs:
            grid = _lcm(grid, e.denominator)
        coeffs: Dict[int, Fraction] = {}
        for e, c in pairs:
            n = int(e * grid)
            coeffs[n] = coeffs.get(n, 0) + c
        return cls._make(grid, coeffs, Fraction(trunc))

    @classmethod
    def monomial(cls, exponent: Scalar, coeff: Scalar, trunc: Scalar) -> "QSeries":
        return cls.from_terms([(exponent, coeff)], trunc)

    @classmethod
    def constant(cls, value: Scalar, trunc: Scalar) -> "QSeries":
        return cls.from_terms([(0, value)], trunc)

    @classmethod
    def zero(cls, trunc: Scalar) -> "QSeries":
        return cls._make(1, {}, Fraction(trunc))

    @classmethod
    def from_integer_list(cls, coeffs: Sequence[Scalar], trunc: Scalar, shift: Scalar = 0) -> "QSeries":
        """``q^shift * sum coeffs[k] q^k`` (dense integer exponents)."""
        shift = Fraction(shift)
        grid = shift.denominator
        base = int(shift * grid)
        return cls._make(grid, {base + k * grid: c for k, c in enumerate(coeffs) if c}, Fraction(trunc))

    # -- accessors ---------------------------------------------------------

    @property
    def grid(self) -> int:
        return self._grid

    @property
    def trunc(self) -> Fraction:
        return self._trunc

    @property
    def terms(self) -> Tuple[Term, ...]:
        g = self._grid
        return tuple((Fraction(n, g), c) for n, c in sorted(self._coeffs.items()))

    def indexed(self, grid: int) -> Dict[int, Fraction]:
        """Coefficients keyed by index on ``grid`` (a multiple of ``self.grid``)."""
        if grid % self._grid:
            raise UnsupportedGrid(f"grid {grid} does not refine {self._grid}")
        k = grid // self._grid
        if k == 1:
            return dict(self._coeffs)
        return {n * k: c for n, c in self._coeffs.items()}

    def valuation(self) -> Fraction:
        if not self._coeffs:
            return self._trunc
        return Fraction(min(self._coeffs), self._grid)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, exponent: Scalar) -> Fraction:
        e = Fraction(exponent)
        if e >= self._trunc:
            raise InsufficientPrecision(e, self._trunc)
        n = e * self._grid
        if n.denominator != 1:
            return Fraction(0)
        return self._coeffs.get(int(n), Fraction(0))

    def truncate(self, order: Scalar) -> "QSeries":
        order = Fraction(order)
        if order >= self._trunc:
            return self
        return QSeries._make(self._grid, self._coeffs, order)

    # -- operators ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QSeries):
            return add(self, other)
        if isinstance(other, Rational):
            return _add_scalar(self, Fraction(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return add(self, -other)
        if isinstance(other, Rational):
            return _add_scalar(self, -Fraction(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return _add_scalar(-self, Fraction(other))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, Rational):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return div(self, other)
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division of a series by the scalar 0")
            return scale(self, 1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return scale(inverse(self), other)
        return NotImplemented

    def __pow__(self, k: int) -> "QSeries":
        return pow_int(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self._trunc, other._trunc)
        grid = _lcm(self._grid, other._grid)
        bound = _bound(grid, trunc)
        mine = {n: c for n, c in self.indexed(grid).items() if n < bound}
        theirs = {n: c for n, c in other.indexed(grid).items() if n < bound}
        return mine == theirs

    __hash__ = None

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})q^{e}" for e, c in self.terms[:6])
        more = " + ..." if len(self._coeffs) > 6 else ""
        return f"QSeries({shown or '0'}{more} + O(q^{self._trunc}))"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "grid": self._grid,
            "trunc": str(self._trunc),
            "terms": [[str(e), str(c)] for e, c in self.terms],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls.from_terms(
            [(as_fraction(e), as_fraction(c)) for e, c in data["terms"]],
            as_fraction(data["trunc"]),
            grid=int(data.get("grid", 1)),
        )


class PolynomialMap(Protocol):
    """Anything carrying ascending integer coefficient lists for P and Q."""

    numerator: Sequence[int]
    denominator: Sequence[int]


# -- ring operations ------------------------------------------------------


def _add_scalar(a: QSeries, c: Fraction) -> QSeries:
    coeffs = dict(a._coeffs)
    coeffs[0] = coeffs.get(0, 0) + c
    return QSeries._make(a._grid, coeffs, a._trunc)


def scale(a: QSeries, c: Scalar) -> QSeries:
    c = Fraction(c)
    if c == 0:
        return QSeries.zero(a._trunc)
    return QSeries(a._grid, {n: x * c for n, x in a._coeffs.items()}, a._trunc)


def add(a: QSeries, b: QSeries) -> QSeries:
    grid = _lcm(a._grid, b._grid)
    out = a.indexed(grid)
    for n, c in b.indexed(grid).items():
        out[n] = out.get(n, 0) + c
    return QSeries._make(grid, out, min(a._trunc, b._trunc))


def mul(a: QSeries, b: QSeries) -> QSeries:
    trunc = min(a._trunc + b.valuation(), b._trunc + a.valuation())
    grid = _lcm(a._grid, b._grid)
    bound = _bound(grid, trunc)
    left = sorted(a.indexed(grid).items())
    right = sorted(b.indexed(grid).items())
    out: Dict[int, Fraction] = {}
    for i, x in left:
        limit = bound - i
        for j, y in right:
            if j >= limit:
                break
            out[i + j] = out.get(i + j, 0) + x * y
    return QSeries._make(grid, out, trunc)


def leading(a: QSeries) -> Tuple[Fraction, Fraction]:
    """Least exponent and its coefficient."""
    if not a._coeffs:
        raise ZeroSeries(f"series is zero up to q^{a._trunc}")
    n = min(a._coeffs)
    return Fraction(n, a._grid), a._coeffs[n]


def _monic_tail(a: QSeries) -> Tuple[int, Fraction, List[Tuple[int, Fraction]], int]:
    """Split ``a = a0 q^v (1 + beta)``; beta as sorted (index offset, coeff) pairs and their step."""
    try:
        v, a0 = leading(a)
    except ZeroSeries as exc:
        raise DivisionByZeroSeries(str(exc)) from exc
    vi = int(v * a._grid)
    beta = sorted((n - vi, c / a0) for n, c in a._coeffs.items() if n != vi)
    step = 0
    for k, _ in beta:
        step = math.gcd(step, k)
    return vi, a0, beta, step or 1


def inverse(b: QSeries) -> QSeries:
    """``1/b`` by geometric-series inversion of the monic part."""
    vi, b0, beta, step = _monic_tail(b)
    grid = b._grid
    v = Fraction(vi, grid)
    kbound = _bound(grid, b._trunc - v)
    w: Dict[int, Fraction] = {0: Fraction(1)}
    for k in range(step, kbound, step):
        s = Fraction(0)
        for i, c in beta:
            if i > k:
                break
            s += c * w[k - i]
        w[k] = -s
    return QSeries._make(grid, {k - vi: c / b0 for k, c in w.items()}, b._trunc - 2 * v)


def div(a: QSeries, b: QSeries) -> QSeries:
    return mul(a, inverse(b))


def pow_int(a: QSeries, k: int) -> QSeries:
    """``a**k`` by repeated squaring; negative ``k`` goes through ``inverse``."""
    if k == 0:
        return QSeries.constant(1, a._trunc - a.valuation())
    if k < 0:
        return pow_int(inverse(a), -k)
    result: Optional[QSeries] = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


# -- substitutions and derivations -----------------------------------------


def substitute_power(a: QSeries, c: Scalar) -> QSeries:
    """Formal substitution ``q -> q^c`` for a positive rational ``c``."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("substitute_power needs a positive exponent")
    grid = a._grid * c.denominator
    return QSeries._make(grid, {n * c.numerator: x for n, x in a._coeffs.items()}, a._trunc * c)


def twist_half(a: QSeries) -> QSeries:
    """Realize ``tau -> tau + 1`` on a series in ``q^(1/2)``: flip the sign of half-integer terms."""
    if 2 % a._grid:
        raise UnsupportedGrid(f"twist_half needs exponents in (1/2)Z, grid is {a._grid}")
    if a._grid == 1:
        return a
    return QSeries(a._grid, {n: (-x if n % 2 else x) for n, x in a._coeffs.items()}, a._trunc)


def d_op(a: QSeries) -> QSeries:
    """``D = q d/dq``."""
    g = a._grid
    return QSeries._make(g, {n: x * Fraction(n, g) for n, x in a._coeffs.items()}, a._trunc)


def sqrt_monic(a: QSeries) -> Tuple[QSeries, Fraction, Fraction]:
    """Monic square root of ``a / (a0 q^v)``.

    Returns ``(u, a0, v/2)`` with ``u**2 == a / (a0 q^v)``; the caller
    rebuilds ``sqrt(a)`` as ``sqrt(a0) q^(v/2) u`` up to the scalar.
    """
    vi, a0, beta, step = _monic_tail(a)
    grid = a._grid
    v = Fraction(vi, grid)
    kbound = _bound(grid, a._trunc - v)
    m = dict(beta)
    u: Dict[int, Fraction] = {0: Fraction(1)}
    for k in range(step, kbound, step):
        s = m.get(k, Fraction(0))
        for i in range(step, k, step):
            s -= u[i] * u[k - i]
        u[k] = s / 2
    return QSeries._make(grid, u, a._trunc - v), a0, v / 2


def shift(a: QSeries, e: Scalar) -> QSeries:
    """Multiply by ``q^e`` exactly."""
    e = Fraction(e)
    grid = _lcm(a._grid, e.denominator)
    off = int(e * grid)
    return QSeries._make(grid, {n + off: x for n, x in a.indexed(grid).items()}, a._trunc + e)


def _horner(coeffs: Sequence[int], t: QSeries) -> Union[QSeries, Fraction]:
    acc: Union[QSeries, Fraction] = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = t * acc + c
    return acc


def compose_rational(rmap: PolynomialMap, t: QSeries) -> QSeries:
    """Evaluate ``P(t)/Q(t)`` on a series ``t``."""
    num = _horner(list(rmap.numerator), t)
    den = _horner(list(rmap.denominator), t)
    if isinstance(den, Fraction):
        if den == 0:
            raise DivisionByZeroSeries("denominator polynomial is identically zero")
        if isinstance(num, Fraction):
            return QSeries.constant(num / den, t.trunc - t.valuation())
        return num / den
    if isinstance(num, Fraction):
        return scale(inverse(den), num)
    return div(num, den)
