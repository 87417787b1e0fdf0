"""Admissible parameters ``s = 2 pi^2 r^2`` and the arithmetic around them.

``h`` is modular exactly when ``r = n/m`` in lowest terms with
``2 <= m <= 5``. The group data used here (index, cusp count, genus) for
the principal congruence subgroups Gamma(m), m <= 5, is classical and
kept as closed formulas rather than recomputed from the groups.
"""
import math
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .errors import LevelOutOfRange, NonIntegralDegree
from .qseries import as_fraction

LEVELS = (2, 3, 4, 5)


class Reason(str, Enum):
    NOT_RATIONAL = "NotRationalSquareForm"
    INTEGER_R = "IntegerR"
    LEVEL_OUT_OF_RANGE = "LevelOutOfRange"
    GCD_VIOLATION = "GcdViolation"
    OK = "OK"


class Admissibility(BaseModel):
    model_config = ConfigDict(frozen=True)

    admissible: bool
    reason: Reason
    m: Optional[int] = None
    n: Optional[int] = None
    nu_inf: Optional[int] = None
    d: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "reason": self.reason.value,
            "m": self.m,
            "n": self.n,
            "nu_inf": self.nu_inf,
            "d": self.d,
        }


class DegreeRelation(BaseModel):
    """``a d + b = c n``, the per-level form of ``(6n - m) nu_inf = 12 d``."""

    model_config = ConfigDict(frozen=True)

    m: int
    a: int
    b: int
    c: int

    def sides(self, n: int, d: int) -> Tuple[int, int]:
        return self.a * d + self.b, self.c * n

    def holds(self, n: int, d: int) -> bool:
        lhs, rhs = self.sides(n, d)
        return lhs == rhs

    @property
    def text(self) -> str:
        a = "" if self.a == 1 else str(self.a)
        c = "" if self.c == 1 else str(self.c)
        return f"{a}d+{self.b}={c}n"


class Witness(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    n: int
    contradiction: bool


class ObstructionRecord(BaseModel):
    """Why no solution factors through the commutator subgroup."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mu: int
    m: int
    nu_inf: int
    genus: Fraction
    witnesses: List[Witness]

    @property
    def holds(self) -> bool:
        return all(w.contradiction for w in self.witnesses)

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "m": self.m,
            "nu_inf": self.nu_inf,
            "genus": str(self.genus),
            "witnesses": [w.model_dump() for w in self.witnesses],
        }


def _check_level(m: int) -> None:
    if m not in LEVELS:
        raise LevelOutOfRange(m)


def _prime_divisors(m: int) -> List[int]:
    primes, p = [], 2
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    return primes


def cusp_number(m: int) -> int:
    """``nu_inf = (m^2/2) prod_{p | m} (1 - 1/p^2)``; Gamma(2) contains -1, so m = 2 gives 3."""
    _check_level(m)
    if m == 2:
        return 3
    value = Fraction(m * m, 2)
    for p in _prime_divisors(m):
        value *= 1 - Fraction(1, p * p)
    return int(value)


def index_mu(m: int) -> int:
    """Index of the image of Gamma(m) in PSL2(Z)."""
    return m * cusp_number(m)


def degree_for(m: int, n: int) -> int:
    """Covering degree ``d = (6n - m) nu_inf / 12``."""
    _check_level(m)
    if n < 1 or math.gcd(m, n) != 1:
        raise ValueError(f"need n >= 1 coprime to m, got m={m}, n={n}")
    total = (6 * n - m) * cusp_number(m)
    if total % 12:
        raise NonIntegralDegree(f"(6*{n} - {m}) * {cusp_number(m)} is not divisible by 12")
    return total // 12


def genus_rh(mu: int, e2: int, e3: int, nu: int) -> Fraction:
    """``g = 1 + mu/12 - e2/4 - e3/3 - nu/2``."""
    return 1 + Fraction(mu, 12) - Fraction(e2, 4) - Fraction(e3, 3) - Fraction(nu, 2)


def degree1_levels() -> List[Tuple[int, int]]:
    """Levels with an integral solution of ``(6 - m) nu_inf = 12``."""
    return [(m, 12 // (6 - m)) for m in range(2, 6) if 12 % (6 - m) == 0]


def relation_table() -> List[DegreeRelation]:
    relations = []
    for m in LEVELS:
        nu = cusp_number(m)
        # (6n - m) nu = 12 d  <=>  (12/g) d + m nu/g = (6 nu/g) n
        g = math.gcd(math.gcd(12, m * nu), 6 * nu)
        relations.append(DegreeRelation(m=m, a=12 // g, b=m * nu // g, c=6 * nu // g))
    return relations


def relation_for(m: int) -> DegreeRelation:
    _check_level(m)
    return next(rel for rel in relation_table() if rel.m == m)


def _verdict(r: Fraction) -> Admissibility:
    n, m = r.numerator, r.denominator
    if m == 1:
        return Admissibility(admissible=False, reason=Reason.INTEGER_R, m=m, n=n)
    if m not in LEVELS:
        return Admissibility(admissible=False, reason=Reason.LEVEL_OUT_OF_RANGE, m=m, n=n)
    return Admissibility(
        admissible=True, reason=Reason.OK, m=m, n=n, nu_inf=cusp_number(m), d=degree_for(m, n)
    )


def admissible(r) -> Admissibility:
    """Classify ``s = 2 pi^2 r^2``.

    Exact rationals (or ``"p/q"`` strings) are reduced to lowest terms;
    anything else has no exact square form and is rejected. Only ``r^2``
    enters ``s``, so the sign of ``r`` is dropped.
    """
    if isinstance(r, str):
        try:
            r = as_fraction(r)
        except (ValueError, ZeroDivisionError):
            return Admissibility(admissible=False, reason=Reason.NOT_RATIONAL)
    if isinstance(r, bool) or not isinstance(r, Rational):
        return Admissibility(admissible=False, reason=Reason.NOT_RATIONAL)
    return _verdict(abs(Fraction(r)))


def admissible_pair(n: int, m: int) -> Admissibility:
    """Like ``admissible(n/m)`` but rejects a pair that is not in lowest terms."""
    if n < 1 or m < 1:
        raise ValueError(f"need positive n and m, got n={n}, m={m}")
    if math.gcd(n, m) != 1:
        return Admissibility(admissible=False, reason=Reason.GCD_VIOLATION, m=m, n=n)
    return _verdict(Fraction(n, m))


def reducible_obstruction(max_d: int = 10) -> ObstructionRecord:
    """The commutator subgroup case.

    Its image has index 6, level 6, one cusp and genus 1. Riemann-Hurwitz
    for a degree-d cover ramified only over the cusp forces ``n = 2d + 1``,
    which contradicts ``d >= n``.
    """
    mu, m = 6, 6
    nu = mu // m
    witnesses = [Witness(d=d, n=2 * d + 1, contradiction=2 * d + 1 > d) for d in range(1, max_d + 1)]
    return ObstructionRecord(mu=mu, m=m, nu_inf=nu, genus=genus_rh(mu, 0, 0, nu), witnesses=witnesses)
