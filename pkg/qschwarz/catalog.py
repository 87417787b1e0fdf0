"""Known modular solutions and the theta/eta identity suites around them.

Each entry is a rational map ``h = P(t)/Q(t)`` of a Hauptmodul ``t`` of
Gamma(m) solving ``{h, tau} = 2 pi^2 (n/m)^2 E4``. The table maps are
written for a Hauptmodul normalized by its cusp values; relative to the
``f_m`` built in ``forms`` that is ``t = f_2`` (= lambda), ``t = 3 f_3``,
``t = 4 f_4`` and ``t = f_5``.
"""
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator
from rich.console import Console

from .classify import cusp_number, relation_for
from .config import get_settings
from .forms import FormId, at_order, discriminant, eisenstein_E2, hauptmodul, lambda_from_eta, theta, theta_from_eta
from .frobenius import ode_residual, pair_from_h
from .qseries import QSeries, Scalar, compose_rational, d_op, leading, twist_half
from .schwarzian import SchwarzReport, verify_schwarz_eq

console = Console(stderr=True)

TABLE_SCALE = {2: 1, 3: 3, 4: 4, 5: 1}


def poly_mul(*factors: Sequence[int]) -> List[int]:
    """Product of polynomials given as ascending coefficient lists."""
    out = [1]
    for f in factors:
        acc = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                acc[i + j] += a * b
        out = acc
    return out


def _t(k: int) -> List[int]:
    return [0] * k + [1]


class RationalMap(BaseModel):
    """``P(t)/Q(t)`` with ascending integer coefficients."""

    model_config = ConfigDict(frozen=True)

    numerator: List[int]
    denominator: List[int]

    @field_validator("denominator")
    @classmethod
    def denominator_nonzero(cls, v: List[int]) -> List[int]:
        if not any(v):
            raise ValueError("denominator polynomial is identically zero")
        return v

    @property
    def degree(self) -> int:
        def deg(p: List[int]) -> int:
            return max((i for i, c in enumerate(p) if c), default=0)

        return max(deg(self.numerator), deg(self.denominator))

    @classmethod
    def identity(cls) -> "RationalMap":
        return cls(numerator=[0, 1], denominator=[1])


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    n: int
    d: int
    map: RationalMap
    hauptmodul: FormId
    scale: Fraction = Fraction(1)

    @property
    def r(self) -> Fraction:
        return Fraction(self.n, self.m)

    @property
    def key(self) -> Tuple[int, int, int]:
        return self.m, self.n, self.d


class EntryReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    n: int
    d: int
    leading_exponent: Fraction
    leading_coefficient: Fraction
    vanishing_ok: bool
    schwarz: SchwarzReport
    degree_ok: bool
    relation: str
    twist_ok: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.vanishing_ok and self.schwarz.ok and self.degree_ok and self.twist_ok is not False

    def to_json(self) -> dict:
        return {
            "entry": [self.m, self.n, self.d],
            "ok": self.ok,
            "leading": [str(self.leading_exponent), str(self.leading_coefficient)],
            "vanishing_ok": self.vanishing_ok,
            "schwarz": self.schwarz.to_json(),
            "degree_ok": self.degree_ok,
            "relation": self.relation,
            "twist_ok": self.twist_ok,
        }


class IdentityReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    ok: bool
    checked_order: Fraction
    residual: QSeries

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked_order": str(self.checked_order),
            "residual": self.residual.to_json(),
        }


_HAUPTMODUL = {2: FormId.F2, 3: FormId.F3, 4: FormId.F4, 5: FormId.F5}


def _table(m: int, n: int, d: int, numerator: List[int], denominator: List[int]) -> CatalogEntry:
    return CatalogEntry(
        m=m,
        n=n,
        d=d,
        map=RationalMap(numerator=numerator, denominator=denominator),
        hauptmodul=_HAUPTMODUL[m],
        scale=Fraction(TABLE_SCALE[m]),
    )


@lru_cache(maxsize=1)
def _entries() -> Tuple[CatalogEntry, ...]:
    unramified = [
        CatalogEntry(m=m, n=1, d=1, map=RationalMap.identity(), hauptmodul=_HAUPTMODUL[m]) for m in (2, 3, 4, 5)
    ]
    ramified = [
        _table(2, 3, 4, poly_mul(_t(3), [-2, 1]), [-2, 4, 0, -2, 1]),
        _table(2, 5, 7, poly_mul(_t(5), [7, -7, 2]), poly_mul([-2, 1], [2, -6, 4, 2, 1, -3, 2])),
        _table(3, 2, 3, poly_mul(_t(2), [1, 1]), [9, 27, 26, 26]),
        _table(3, 4, 7, poly_mul(_t(4), [7, 21, 21, 9]), poly_mul([1, 1], [-1, -6, -15, -6, 27, 36, 27])),
        _table(4, 3, 7, poly_mul(_t(3), [14, 28, 21, 7, 1]), poly_mul([2, 4, 3, 1, 1], [2, 1], [2, 1], [2, 1])),
        _table(
            4, 5, 13,
            poly_mul(_t(5), [156, 624, 1092, 1092, 689, 286, 78, 13, 1]),
            poly_mul([2, 1], [2, 1], [2, 1], [2, 1], [2, 1], [-4, -16, -28, -28, -11, 6, 8, 3, 1]),
        ),
        _table(5, 2, 7, poly_mul(_t(2), [-7, 0, 0, 0, 0, 1]), [1, 0, 0, 0, 0, 7]),
        _table(5, 3, 13, poly_mul(_t(3), [-26, 0, 0, 0, 0, -39, 0, 0, 0, 0, 1]), [-1, 0, 0, 0, 0, -39, 0, 0, 0, 0, 26]),
    ]
    return tuple(unramified + ramified)


def entries() -> List[CatalogEntry]:
    return list(_entries())


def entry(m: int, n: int, d: int) -> CatalogEntry:
    for e in _entries():
        if e.key == (m, n, d):
            return e
    raise KeyError(f"no catalog entry ({m},{n},{d})")


def build_h(e: CatalogEntry, order: Scalar) -> QSeries:
    """``P(t)/Q(t)`` with ``t = scale * f_m``, modulo ``q^order``."""
    order = Fraction(order)
    t = e.scale * hauptmodul(e.m, order)
    return at_order(compose_rational(e.map, t), order)


def _twist_ok(e: CatalogEntry, h: QSeries) -> Optional[bool]:
    # tau -> tau + 1 on level 2: lambda -> lambda/(lambda - 1), ramified entries -> -h
    if e.m != 2:
        return None
    if e.d == 1:
        return twist_half(h) == h / (h - 1)
    return twist_half(h) == -h


def verify_entry(e: CatalogEntry, order: Optional[Scalar] = None) -> EntryReport:
    """Vanishing order, Schwarz residual, degree relation and (level 2) the tau+1 law."""
    order = get_settings().catalog_order if order is None else Fraction(order)
    h = build_h(e, order + e.r)
    exponent, coefficient = leading(h)
    relation = relation_for(e.m)
    lhs, rhs = relation.sides(e.n, e.d)
    degree_ok = (6 * e.n - e.m) * cusp_number(e.m) == 12 * e.d and e.map.degree == e.d and lhs == rhs
    report = EntryReport(
        m=e.m,
        n=e.n,
        d=e.d,
        leading_exponent=exponent,
        leading_coefficient=coefficient,
        vanishing_ok=exponent == e.r,
        schwarz=verify_schwarz_eq(h, e.r, order),
        degree_ok=degree_ok,
        relation=f"{relation.text}: {lhs} = {rhs}",
        twist_ok=_twist_ok(e, h),
    )
    if not report.ok:
        console.print(f"[bold red]❌ Catalog entry {e.key} failed[/bold red]")
    return report


def pair_residuals(e: CatalogEntry, order: Optional[Scalar] = None) -> Tuple[QSeries, QSeries]:
    """ODE residuals of ``pair_from_h(build_h(e))`` at ``r = n/m``."""
    order = get_settings().catalog_order if order is None else Fraction(order)
    h = build_h(e, order + 2 * e.r)
    y1, y2 = pair_from_h(h)
    return ode_residual(y1, e.r, order), ode_residual(y2, e.r, order)


def _report(name: str, lhs: QSeries, rhs: QSeries, order: Fraction) -> IdentityReport:
    residual = at_order(lhs - rhs, order)
    return IdentityReport(name=name, ok=residual.is_zero(), checked_order=order, residual=residual)


def theta_ode_solutions(order: Scalar) -> Tuple[QSeries, QSeries, QSeries]:
    """``theta2^2/(theta3^2 theta4^2)``, ``theta3^2/(theta2^2 theta4^2)`` and ``theta4^2/(theta2^2 theta3^2)``."""
    order = Fraction(order)
    M = order + 1
    t2, t3, t4 = (theta(j, M) ** 2 for j in (2, 3, 4))
    return (
        at_order(t2 / (t3 * t4), order),
        at_order(t3 / (t2 * t4), order),
        at_order(t4 / (t2 * t3), order),
    )


def theta_quotient_identities(order: Scalar) -> List[IdentityReport]:
    """The third quotient is ``y2 - y1`` (theta3^4 = theta2^4 + theta4^4), and all three solve the r = 1/2 equation."""
    order = Fraction(order)
    y1, y2, y3 = theta_ode_solutions(order)
    reports = [_report("y2 - y1 = theta4^2/(theta2^2 theta3^2)", y2 - y1, y3, order)]
    for name, y in (("y1", y1), ("y2", y2), ("y2 - y1", y2 - y1)):
        residual = ode_residual(y, Fraction(1, 2), order)
        reports.append(IdentityReport(name=f"ode {name}", ok=residual.is_zero(), checked_order=order, residual=residual))
    return reports


def weight2_lambda_identities(order: Scalar) -> List[IdentityReport]:
    """``theta2^4 (1 - l) = theta3^4 l (1 - l) = theta4^4 l = 2 D l`` for ``l = lambda``."""
    order = Fraction(order)
    M = order + 1
    lam = hauptmodul(2, M)
    two_dl = 2 * d_op(lam)
    t2, t3, t4 = (theta(j, M) ** 4 for j in (2, 3, 4))
    return [
        _report("theta2^4 (1 - lambda) = 2 D lambda", t2 * (1 - lam), two_dl, order),
        _report("theta3^4 lambda (1 - lambda) = 2 D lambda", t3 * lam * (1 - lam), two_dl, order),
        _report("theta4^4 lambda = 2 D lambda", t4 * lam, two_dl, order),
    ]


def jacobi_identities(order: Scalar) -> List[IdentityReport]:
    """Jacobi's quartic relation, the eta-quotient forms of theta and lambda, and ``D Delta = E2 Delta``."""
    order = Fraction(order)
    t2, t3, t4 = (theta(j, order) for j in (2, 3, 4))
    reports = [_report("theta3^4 = theta2^4 + theta4^4", t3 ** 4, t2 ** 4 + t4 ** 4, order)]
    for j, t in ((2, t2), (3, t3), (4, t4)):
        reports.append(_report(f"theta{j} eta quotient", t, theta_from_eta(j, order), order))
    reports.append(_report("lambda eta quotient", hauptmodul(2, order), lambda_from_eta(order), order))
    delta = discriminant(order)
    reports.append(_report("D Delta = E2 Delta", d_op(delta), eisenstein_E2(order) * delta, order))
    return reports
