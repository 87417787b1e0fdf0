"""Frobenius solutions at the cusp for ``D^2 y = (r^2/4) E4 y``.

Expanding ``-(r^2/4) E4 = sum alpha_n q^n``, a solution
``y = q^rho sum c_k q^k`` satisfies the recurrence

    [(rho + k)^2 + alpha_0] c_k = - sum_{i<k} alpha_{k-i} c_i

with ``rho = +-r/2`` the indicial roots. For a positive integer ``r`` the
smaller root is resonant at ``k = r`` and the second solution carries a
``log q`` term, handled formally with ``D(log q) = 1``.
"""
import math
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .config import get_settings
from .errors import InsufficientPrecision, Resonance
from .forms import eisenstein_E4, sigma_k
from .qseries import QSeries, Scalar, d_op, inverse, shift, sqrt_monic


class AlphaSeries(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alphas: List[Fraction]


class FrobeniusSolution(BaseModel):
    """``q^rho sum c_k q^k``, plus ``log_coeff * log(q) * log_partner`` in the resonant case."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rho: Fraction
    r: Fraction
    coeffs: List[Fraction]
    log_coeff: Fraction = Fraction(0)
    log_partner: Optional["FrobeniusSolution"] = None

    @property
    def terms(self) -> int:
        return len(self.coeffs) - 1

    @property
    def trunc(self) -> Fraction:
        return self.rho + len(self.coeffs)

    def to_json(self) -> dict:
        return {
            "rho": str(self.rho),
            "coeffs": [str(c) for c in self.coeffs],
            "log_coeff": str(self.log_coeff),
        }


class LogSolution(BaseModel):
    """Series view ``y2 = log(q) * log_part + free_part`` of a resonant solution."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k_log: Fraction
    power: QSeries
    log_part: QSeries
    free_part: QSeries


def _terms(K: Optional[int]) -> int:
    K = get_settings().frobenius_terms if K is None else K
    if K < 0:
        raise ValueError(f"number of terms must be nonnegative, got {K}")
    return K


def indicial_roots(r: Scalar) -> Tuple[Fraction, Fraction]:
    r = Fraction(r)
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return r / 2, -r / 2


def alpha_series(r: Scalar, K: int) -> AlphaSeries:
    """Coefficients of ``-(r^2/4) E4`` up to ``q^K``."""
    base = -Fraction(r) ** 2 / 4
    return AlphaSeries(alphas=[base] + [base * 240 * sigma_k(3, n) for n in range(1, K + 1)])


def solve_power(rho: Scalar, r: Scalar, K: Optional[int] = None) -> FrobeniusSolution:
    rho, r, K = Fraction(rho), Fraction(r), _terms(K)
    alpha = alpha_series(r, K).alphas
    if rho * rho + alpha[0] != 0:
        raise ValueError(f"{rho} is not an indicial root for r={r}")
    c = [Fraction(1)]
    for k in range(1, K + 1):
        lead = (rho + k) ** 2 + alpha[0]
        if lead == 0:
            raise Resonance(k)
        c.append(-sum(alpha[k - i] * c[i] for i in range(k)) / lead)
    return FrobeniusSolution(rho=rho, r=r, coeffs=c)


def solve_log(r: int, K: Optional[int] = None, gauge: Scalar = 0) -> FrobeniusSolution:
    """Second solution at the resonant root ``-r/2`` for a positive integer ``r``.

    With ``L = D^2 + sum alpha_n q^n`` we have ``L[log(q) y1] = 2 D y1``, so the
    equation at index ``n`` reads

        n (n - r) C_n + sum_{i<n} alpha_{n-i} C_i + 2 k (n - r/2) c_{n-r} = 0,

    the last term only for ``n >= r``. Index ``n = r`` fixes ``k``; ``C_r`` is
    free and set to ``gauge``.
    """
    if Fraction(r).denominator != 1 or r < 1:
        raise ValueError(f"solve_log needs a positive integer r, got {r}")
    r, K = int(r), _terms(K)
    half = Fraction(r, 2)
    y1 = solve_power(half, r, K)
    alpha = alpha_series(r, K).alphas
    C = [Fraction(1)]
    k_log = Fraction(0)
    for n in range(1, K + 1):
        s = sum(alpha[n - i] * C[i] for i in range(n))
        if n < r:
            C.append(-s / (n * (n - r)))
        elif n == r:
            k_log = -s / r
            C.append(Fraction(gauge))
        else:
            s += 2 * k_log * (n - half) * y1.coeffs[n - r]
            C.append(-s / (n * (n - r)))
    return FrobeniusSolution(rho=-half, r=Fraction(r), coeffs=C, log_coeff=k_log, log_partner=y1)


def series(sol: FrobeniusSolution) -> QSeries:
    """The power part ``q^rho sum c_k q^k`` as a series modulo ``q^(rho+K+1)``."""
    return QSeries.from_terms(((sol.rho + k, c) for k, c in enumerate(sol.coeffs)), sol.trunc)


def log_parts(sol: FrobeniusSolution) -> LogSolution:
    if sol.log_partner is None:
        raise ValueError("solution has no logarithmic partner")
    power = series(sol.log_partner)
    return LogSolution(
        k_log=sol.log_coeff,
        power=power,
        log_part=sol.log_coeff * power,
        free_part=series(sol),
    )


def _operator(y: QSeries, r: Fraction, order: Fraction) -> QSeries:
    """``D^2 y - (r^2/4) E4 y`` with E4 sized for ``order``."""
    e4_order = max(math.ceil(order - y.valuation()), 0) + 1
    return d_op(d_op(y)) - (r * r / 4) * eisenstein_E4(e4_order) * y


def _checked(residual: QSeries, order: Fraction) -> QSeries:
    if order > residual.trunc:
        raise InsufficientPrecision(order, residual.trunc)
    return residual.truncate(order)


def ode_residual(y: QSeries, r: Scalar, order: Optional[Scalar] = None) -> QSeries:
    """``D^2 y - (r^2/4) E4 y`` modulo ``q^order`` (default: the truncation of ``y``)."""
    r = Fraction(r)
    order = y.trunc if order is None else Fraction(order)
    return _checked(_operator(y, r, order), order)


def log_residual(sol: FrobeniusSolution, r: Scalar, order: Optional[Scalar] = None) -> Tuple[QSeries, QSeries]:
    """Residual of a resonant solution split into its ``log(q)`` and log-free components."""
    r = Fraction(r)
    parts = log_parts(sol)
    order = parts.free_part.trunc if order is None else Fraction(order)
    log_component = _operator(parts.log_part, r, order)
    free_component = _operator(parts.free_part, r, order) + 2 * d_op(parts.log_part)
    return _checked(log_component, order), _checked(free_component, order)


def ratio_solution(r: Scalar, K: Optional[int] = None) -> QSeries:
    """``h = q^r (1 + ...)``, the ratio of the two power solutions."""
    r = Fraction(r)
    if r <= 0 or r.denominator == 1:
        raise ValueError(f"ratio_solution needs a positive non-integer r, got {r}")
    K = _terms(K)
    upper, lower = indicial_roots(r)
    return series(solve_power(upper, r, K)) / series(solve_power(lower, r, K))


def pair_from_h(h: QSeries) -> Tuple[QSeries, QSeries]:
    """``(h / sqrt(Dh), 1 / sqrt(Dh))`` up to a common constant factor.

    ``dh/dtau = 2 pi i Dh``; the constant and ``sqrt`` of the leading
    coefficient only rescale solutions of a linear equation and are dropped.
    """
    u, _, half_v = sqrt_monic(d_op(h))
    y2 = shift(inverse(u), -half_v)
    return h * y2, y2


def wronskian(y1: QSeries, y2: QSeries) -> QSeries:
    return y1 * d_op(y2) - y2 * d_op(y1)


def cusp_progression_ok(h: QSeries, m: int, n: int) -> bool:
    """Every exponent of ``h`` in ``q_m = q^(1/m)`` lies in ``n + m Z_{>=0}``."""
    for e, _ in h.terms:
        k = e * m
        if k.denominator != 1 or k < n or (int(k) - n) % m:
            return False
    return True
