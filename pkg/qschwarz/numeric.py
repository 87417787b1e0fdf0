"""Floating-point evaluation on the upper half-plane.

The exact layer cannot see ``tau -> -1/tau``; here series are summed as
``sum c_e exp(2 pi i tau e)`` and the transformation laws of lambda and
of the (2,3,4) solution are checked at sample points.
"""
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from rich.console import Console

from .catalog import entry
from .config import get_settings
from .errors import DomainError
from .forms import eisenstein_E4, theta
from .qseries import PolynomialMap, QSeries, Scalar

console = Console(stderr=True)

SAMPLE_POINTS = (0.1 + 1.2j, -0.37 + 0.9j, 0.5 + 2.0j)


class EvalConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    terms: int = Field(default=400, ge=1)
    tol: float = Field(default=1e-8, gt=0)
    min_im: float = Field(default=0.3, gt=0)

    @classmethod
    def from_settings(cls) -> "EvalConfig":
        s = get_settings()
        return cls(terms=s.eval_terms, tol=s.eval_tol, min_im=s.eval_min_im)


def _cfg(cfg: Optional[EvalConfig]) -> EvalConfig:
    return EvalConfig.from_settings() if cfg is None else cfg


def _check_domain(tau: complex, cfg: EvalConfig) -> None:
    if tau.imag < cfg.min_im:
        raise DomainError(f"Im(tau) = {tau.imag:.4g} is below min_im = {cfg.min_im}")


def eval_series(a: QSeries, tau: complex, cfg: Optional[EvalConfig] = None) -> Tuple[complex, float]:
    """Value of ``a`` at ``tau`` and the magnitude of the last band summed."""
    cfg = _cfg(cfg)
    tau = complex(tau)
    _check_domain(tau, cfg)
    terms = a.terms[: cfg.terms]
    if not terms:
        return 0j, 0.0
    exps = np.array([float(e) for e, _ in terms])
    coeffs = np.array([float(c) for _, c in terms])
    bands = coeffs * np.exp(2j * np.pi * tau * exps)
    return complex(bands.sum()), float(abs(bands[-1]))


def _theta_value(j: int, tau: complex, cfg: EvalConfig) -> complex:
    return eval_series(theta(j, Fraction(cfg.terms, 2)), tau, cfg)[0]


def lambda_value(tau: complex, cfg: Optional[EvalConfig] = None) -> complex:
    """``lambda = theta2^4 / theta3^4``; the theta sums converge much faster than lambda's own series."""
    cfg = _cfg(cfg)
    return (_theta_value(2, tau, cfg) / _theta_value(3, tau, cfg)) ** 4


def eval_rational_map(rmap: PolynomialMap, t: complex) -> complex:
    num = np.polyval(list(reversed(rmap.numerator)), t)
    den = np.polyval(list(reversed(rmap.denominator)), t)
    return complex(num / den)


def h234_value(tau: complex, cfg: Optional[EvalConfig] = None) -> complex:
    return eval_rational_map(entry(2, 3, 4).map, lambda_value(tau, cfg))


class TransformationLaw(BaseModel):
    """``f(act_tau(tau)) == act_value(f(tau))``."""

    model_config = ConfigDict(frozen=True)

    name: str
    act_tau: Callable[[complex], complex]
    act_value: Callable[[complex], complex]


class LawResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    lhs: complex
    rhs: complex
    deviation: float
    ok: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "deviation": self.deviation,
            "ok": self.ok,
        }


class LawsReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: complex
    tol: float
    results: List[LawResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        return {
            "tau": [self.tau.real, self.tau.imag],
            "tol": self.tol,
            "ok": self.ok,
            "results": [r.to_json() for r in self.results],
        }


LAMBDA_LAWS = [
    TransformationLaw(name="tau+1", act_tau=lambda t: t + 1, act_value=lambda v: v / (v - 1)),
    TransformationLaw(name="-1/tau", act_tau=lambda t: -1 / t, act_value=lambda v: 1 - v),
    TransformationLaw(name="tau/(tau+1)", act_tau=lambda t: t / (t + 1), act_value=lambda v: 1 / v),
    TransformationLaw(name="-1/(tau+1)", act_tau=lambda t: -1 / (t + 1), act_value=lambda v: 1 / (1 - v)),
    TransformationLaw(name="(1+tau)/(-tau)", act_tau=lambda t: (1 + t) / (-t), act_value=lambda v: 1 - 1 / v),
]

H234_LAWS = [
    TransformationLaw(name="tau+1", act_tau=lambda t: t + 1, act_value=lambda v: -v),
    TransformationLaw(name="-1/tau", act_tau=lambda t: -1 / t, act_value=lambda v: (v + 1) / (3 * v - 1)),
    TransformationLaw(name="tau/(tau+1)", act_tau=lambda t: t / (t + 1), act_value=lambda v: (-v + 1) / (3 * v + 1)),
    TransformationLaw(name="-1/(tau+1)", act_tau=lambda t: -1 / (t + 1), act_value=lambda v: (v - 1) / (3 * v + 1)),
    TransformationLaw(name="(1+tau)/(-tau)", act_tau=lambda t: (1 + t) / (-t), act_value=lambda v: (v + 1) / (-3 * v + 1)),
]


def check_laws(
    f: Callable[[complex], complex],
    tau: complex,
    laws: Sequence[TransformationLaw],
    cfg: Optional[EvalConfig] = None,
) -> LawsReport:
    """Evaluate both sides of every law; deviations are absolute, relative once ``|rhs| > 1``."""
    cfg = _cfg(cfg)
    tau = complex(tau)
    _check_domain(tau, cfg)
    moved = [complex(law.act_tau(tau)) for law in laws]
    for point in moved:
        _check_domain(point, cfg)
    base = f(tau)
    results = []
    for law, point in zip(laws, moved):
        lhs = complex(f(point))
        rhs = complex(law.act_value(base))
        deviation = abs(lhs - rhs) / max(1.0, abs(rhs))
        results.append(LawResult(name=law.name, lhs=lhs, rhs=rhs, deviation=deviation, ok=deviation < cfg.tol))
    report = LawsReport(tau=tau, tol=cfg.tol, results=results)
    if not report.ok:
        failed = ", ".join(r.name for r in results if not r.ok)
        console.print(f"[bold yellow]⚠️  Laws failed at tau={tau}:[/bold yellow] {failed}")
    return report


def lambda_laws(tau: complex, cfg: Optional[EvalConfig] = None, series: Optional[QSeries] = None) -> LawsReport:
    """The five lambda laws; ``series`` replaces the theta quotient (e.g. a perturbed expansion)."""
    cfg = _cfg(cfg)
    if series is None:
        return check_laws(lambda t: lambda_value(t, cfg), tau, LAMBDA_LAWS, cfg)
    return check_laws(lambda t: eval_series(series, t, cfg)[0], tau, LAMBDA_LAWS, cfg)


def h_laws(tau: complex, cfg: Optional[EvalConfig] = None, laws: Sequence[TransformationLaw] = H234_LAWS) -> LawsReport:
    """The five laws of the (2,3,4) solution ``h = R(lambda)``."""
    cfg = _cfg(cfg)
    return check_laws(lambda t: h234_value(t, cfg), tau, laws, cfg)


class FDReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: complex
    step: float
    r: Fraction
    schwarzian: complex
    expected: complex
    deviation: float

    def to_json(self) -> dict:
        return {
            "tau": [self.tau.real, self.tau.imag],
            "step": self.step,
            "r": str(self.r),
            "schwarzian": [self.schwarzian.real, self.schwarzian.imag],
            "expected": [self.expected.real, self.expected.imag],
            "deviation": self.deviation,
        }


def schwarzian_fd(
    a: QSeries,
    r: Scalar,
    tau: complex,
    step: Optional[float] = None,
    cfg: Optional[EvalConfig] = None,
) -> FDReport:
    """Central-difference ``{a, tau}`` against ``2 pi^2 r^2 E4(tau)``; the error is O(step^2)."""
    cfg = _cfg(cfg)
    s = get_settings().fd_step if step is None else step
    tau = complex(tau)
    r = Fraction(r)

    def f(t: complex) -> complex:
        return eval_series(a, t, cfg)[0]

    # the stencil moves along the real axis, so every point shares Im(tau)
    fm2, fm1, f0, fp1, fp2 = (f(tau + k * s) for k in (-2, -1, 0, 1, 2))
    d1 = (fp1 - fm1) / (2 * s)
    d2 = (fp1 - 2 * f0 + fm1) / (s * s)
    d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * s ** 3)
    value = d3 / d1 - 1.5 * (d2 / d1) ** 2

    e4 = eisenstein_E4(max(cfg.terms // 10, 2))
    expected = 2 * np.pi ** 2 * float(r * r) * eval_series(e4, tau, cfg)[0]
    deviation = abs(value - expected) / abs(expected)
    return FDReport(tau=tau, step=s, r=r, schwarzian=value, expected=expected, deviation=float(deviation))
