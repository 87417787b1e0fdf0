"""Classical modular forms and Hauptmoduln as exact q-series.

Every constructor takes the order ``N`` (an exponent) and returns a
series known modulo ``q^N``. Composite forms are built with a one-unit
margin and truncated back, so the returned truncation is exactly ``N``.
"""
import math
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Union

from .errors import InsufficientPrecision, LevelOutOfRange
from .qseries import QSeries, Scalar, substitute_power
from .registry import FormRegistry


class FormId(str, Enum):
    E2 = "E2"
    E4 = "E4"
    ETA = "Eta"
    DELTA = "Delta"
    THETA2 = "Theta2"
    THETA3 = "Theta3"
    THETA4 = "Theta4"
    LAMBDA = "Lambda"
    J = "J"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"


MARGIN = Fraction(1)
HALF = Fraction(1, 2)


def _order(N: Scalar) -> Fraction:
    N = Fraction(N)
    if N <= 0:
        raise ValueError(f"expansion order must be positive, got {N}")
    return N


def at_order(series: QSeries, N: Scalar) -> QSeries:
    """Truncate to exactly ``q^N``; fail if the series is known to less."""
    N = Fraction(N)
    if series.trunc < N:
        raise InsufficientPrecision(N, series.trunc)
    return series.truncate(N)


def sigma_k(k: int, n: int) -> int:
    """Sum of the k-th powers of the positive divisors of n."""
    if n < 1:
        raise ValueError("sigma_k needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def _eisenstein(k: int, factor: int, N: Fraction) -> QSeries:
    top = math.ceil(N)
    coeffs = [1] + [factor * sigma_k(k, n) for n in range(1, top)]
    return QSeries.from_integer_list(coeffs, N)


def eisenstein_E4(N: Scalar) -> QSeries:
    """``1 + 240 sum sigma_3(n) q^n``."""
    N = _order(N)
    return FormRegistry.get_or_build((FormId.E4.value, N), lambda: _eisenstein(3, 240, N))


def eisenstein_E2(N: Scalar) -> QSeries:
    """``1 - 24 sum sigma_1(n) q^n``."""
    N = _order(N)
    return FormRegistry.get_or_build((FormId.E2.value, N), lambda: _eisenstein(1, -24, N))


def _pentagonal(N: Fraction, offset: Fraction) -> Dict[Fraction, int]:
    # prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
    terms: Dict[Fraction, int] = {}
    k = 0
    while True:
        added = False
        for j in ((k, -k) if k else (0,)):
            e = Fraction(j * (3 * j - 1), 2)
            if offset + e < N:
                terms[offset + e] = -1 if j % 2 else 1
                added = True
        if not added and k > 0:
            break
        k += 1
    return terms


def eta(N: Scalar) -> QSeries:
    """Dedekind eta ``q^(1/24) prod (1 - q^n)``."""
    N = _order(N)

    def build() -> QSeries:
        return QSeries.from_terms(_pentagonal(N, Fraction(1, 24)).items(), N)

    return FormRegistry.get_or_build((FormId.ETA.value, N), build)


def discriminant(N: Scalar) -> QSeries:
    """``Delta = eta^24``."""
    N = _order(N)
    return FormRegistry.get_or_build((FormId.DELTA.value, N), lambda: at_order(eta(N) ** 24, N))


def theta(j: int, N: Scalar) -> QSeries:
    """Jacobi null theta functions in ``q`` (``t = q^(1/2)``)."""
    N = _order(N)
    if j not in (2, 3, 4):
        raise ValueError(f"theta index must be 2, 3 or 4, got {j}")

    def build() -> QSeries:
        terms: List = []
        if j == 2:
            n = 0
            while Fraction((2 * n + 1) ** 2, 8) < N:
                terms.append((Fraction((2 * n + 1) ** 2, 8), 2))
                n += 1
        else:
            terms.append((0, 1))
            n = 1
            while Fraction(n * n, 2) < N:
                sign = -1 if (j == 4 and n % 2) else 1
                terms.append((Fraction(n * n, 2), 2 * sign))
                n += 1
        return QSeries.from_terms(terms, N)

    tag = {2: FormId.THETA2, 3: FormId.THETA3, 4: FormId.THETA4}[j]
    return FormRegistry.get_or_build((tag.value, N), build)


def _eta_at(c: Scalar, N: Fraction) -> QSeries:
    """``eta(c tau)`` known modulo ``q^N``."""
    c = Fraction(c)
    return substitute_power(eta(N / c), c)


def theta_from_eta(j: int, N: Scalar) -> QSeries:
    """The eta-quotient forms of theta_2, theta_3, theta_4."""
    N = _order(N)
    M = N + MARGIN
    if j == 2:
        value = 2 * _eta_at(2, M) ** 2 / _eta_at(1, M)
    elif j == 3:
        value = _eta_at(1, M) ** 5 / (_eta_at(HALF, M) ** 2 * _eta_at(2, M) ** 2)
    elif j == 4:
        value = _eta_at(HALF, M) ** 2 / _eta_at(1, M)
    else:
        raise ValueError(f"theta index must be 2, 3 or 4, got {j}")
    return at_order(value, N)


def lambda_from_eta(N: Scalar) -> QSeries:
    N = _order(N)
    M = N + MARGIN
    return at_order(theta_from_eta(2, M) ** 4 / theta_from_eta(3, M) ** 4, N)


def legendre_5(n: int) -> int:
    """Legendre symbol (n/5)."""
    r = n % 5
    if r == 0:
        return 0
    return 1 if r in (1, 4) else -1


def _f5(N: Fraction) -> QSeries:
    # q^(1/5) prod (1 - q^n)^{(n/5)} as a dense integer product
    top = math.ceil(N - Fraction(1, 5))
    c = [0] * max(top, 1)
    c[0] = 1
    for n in range(1, top):
        chi = legendre_5(n)
        if chi == 1:
            for k in range(top - 1, n - 1, -1):
                c[k] -= c[k - n]
        elif chi == -1:
            for k in range(n, top):
                c[k] += c[k - n]
    return QSeries.from_integer_list(c, N, shift=Fraction(1, 5))


def hauptmodul(m: int, N: Scalar) -> QSeries:
    """The Hauptmodul f_m of Gamma(m), 2 <= m <= 5: leading term q^(1/m), except f_2 = lambda = 16 q^(1/2) + ..."""
    N = _order(N)
    if m not in (2, 3, 4, 5):
        raise LevelOutOfRange(m)
    M = N + MARGIN

    def build() -> QSeries:
        if m == 2:
            value = theta(2, M) ** 4 / theta(3, M) ** 4
        elif m == 3:
            value = (_eta_at(3, M) / _eta_at(Fraction(1, 3), M)) ** 3
        elif m == 4:
            value = (_eta_at(Fraction(1, 2), M) * _eta_at(4, M) ** 2) / (
                _eta_at(Fraction(1, 4), M) ** 2 * _eta_at(2, M)
            )
        else:
            value = _f5(M)
        return at_order(value, N)

    tag = {2: FormId.F2, 3: FormId.F3, 4: FormId.F4, 5: FormId.F5}[m]
    return FormRegistry.get_or_build((tag.value, N), build)


def lambda_series(N: Scalar) -> QSeries:
    return hauptmodul(2, N)


def j_invariant(N: Scalar) -> QSeries:
    """``j = E4^3 / Delta``."""
    N = _order(N)
    M = N + 2 * MARGIN
    return FormRegistry.get_or_build(
        (FormId.J.value, N), lambda: at_order(eisenstein_E4(M) ** 3 / discriminant(M), N)
    )


_BUILDERS: Dict[FormId, Callable[[Fraction], QSeries]] = {
    FormId.E2: eisenstein_E2,
    FormId.E4: eisenstein_E4,
    FormId.ETA: eta,
    FormId.DELTA: discriminant,
    FormId.THETA2: lambda N: theta(2, N),
    FormId.THETA3: lambda N: theta(3, N),
    FormId.THETA4: lambda N: theta(4, N),
    FormId.LAMBDA: lambda_series,
    FormId.J: j_invariant,
    FormId.F2: lambda N: hauptmodul(2, N),
    FormId.F3: lambda N: hauptmodul(3, N),
    FormId.F4: lambda N: hauptmodul(4, N),
    FormId.F5: lambda N: hauptmodul(5, N),
}


def form(form_id: Union[FormId, str], N: Scalar) -> QSeries:
    """Dispatch on a form id (``"E4"``, ``"Lambda"``, ``"F3"``, ...)."""
    return _BUILDERS[FormId(form_id)](_order(N))
