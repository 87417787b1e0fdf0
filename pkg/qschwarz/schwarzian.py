"""The Schwarzian operator in the D = q d/dq frame.

With ``q = exp(2 pi i tau)`` we have ``d/dtau = 2 pi i D`` and therefore
``{h, tau} = (2 pi i)^2 sigma(h)`` where

    sigma(h) = D^3 h / D h - 3/2 (D^2 h / D h)^2.

Writing ``s = 2 pi^2 r^2``, the equation ``{h, tau} = s E4`` becomes
``sigma(h) = -(r^2/2) E4``, which only involves rationals.
"""
from fractions import Fraction
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict
from rich.console import Console

from .config import get_settings
from .errors import DegenerateMobius, DivisionByZeroSeries, InsufficientPrecision
from .forms import eisenstein_E4
from .qseries import QSeries, Scalar, d_op

console = Console(stderr=True)

Mobius = Tuple[Scalar, Scalar, Scalar, Scalar]


class SchwarzReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r: Fraction
    residual: QSeries
    ok: bool
    checked_order: Fraction

    def to_json(self) -> dict:
        return {
            "r": str(self.r),
            "ok": self.ok,
            "checked_order": str(self.checked_order),
            "residual": self.residual.to_json(),
        }


def _derivatives(h: QSeries) -> Tuple[QSeries, QSeries, QSeries]:
    d1 = d_op(h)
    if d1.is_zero():
        raise DivisionByZeroSeries(f"D h vanishes up to q^{d1.trunc}")
    d2 = d_op(d1)
    return d1, d2, d_op(d2)


def normalized_schwarzian(h: QSeries) -> QSeries:
    """``sigma(h) = D^3h/Dh - 3/2 (D^2h/Dh)^2``."""
    d1, d2, d3 = _derivatives(h)
    ratio = d2 / d1
    return d3 / d1 - Fraction(3, 2) * ratio * ratio


def justified_order(h: QSeries) -> Fraction:
    """Truncation of ``sigma(h)``: ``trunc(h) - val(Dh)``."""
    d1 = d_op(h)
    if d1.is_zero():
        raise DivisionByZeroSeries(f"D h vanishes up to q^{d1.trunc}")
    return h.trunc - d1.valuation()


def verify_schwarz_eq(h: QSeries, r: Scalar, order: Optional[Scalar] = None) -> SchwarzReport:
    """Check ``sigma(h) + (r^2/2) E4 == 0`` modulo ``q^order``.

    Without an explicit order, checks up to the configured default order
    or the justified truncation of ``sigma(h)``, whichever is smaller.
    """
    r = Fraction(r)
    sigma = normalized_schwarzian(h)
    if order is None:
        order = min(sigma.trunc, get_settings().default_order)
    order = Fraction(order)
    if order > sigma.trunc:
        raise InsufficientPrecision(order, sigma.trunc)
    if order <= 0:
        raise ValueError(f"order must be positive, got {order}")
    residual = (sigma + (r * r / 2) * eisenstein_E4(order)).truncate(order)
    ok = residual.is_zero()
    if not ok:
        console.print(f"[bold yellow]⚠️  Schwarz residual nonzero[/bold yellow] for r={r}: [dim]{residual!r}[/dim]")
    return SchwarzReport(r=r, residual=residual, ok=ok, checked_order=order)


def _check_mobius(coeffs: Mobius) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    a, b, c, d = (Fraction(x) for x in coeffs)
    if a * d - b * c == 0:
        raise DegenerateMobius(f"ad - bc = 0 for {(a, b, c, d)}")
    return a, b, c, d


def mobius_apply(coeffs: Mobius, h: QSeries) -> QSeries:
    """``(a h + b) / (c h + d)``."""
    a, b, c, d = _check_mobius(coeffs)
    top = a * h + b
    if c == 0:
        return top / d
    return top / (c * h + d)


def compose_mobius(g1: Mobius, g2: Mobius) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Matrix product ``g1 g2``; applying it equals applying ``g2`` then ``g1``."""
    a1, b1, c1, d1 = _check_mobius(g1)
    a2, b2, c2, d2 = _check_mobius(g2)
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)
