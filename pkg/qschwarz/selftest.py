import asyncio
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict
from rich.console import Console
from rich.table import Table

from .catalog import (
    entries,
    jacobi_identities,
    pair_residuals,
    theta_quotient_identities,
    verify_entry,
    weight2_lambda_identities,
)
from .classify import (
    LEVELS,
    admissible_pair,
    cusp_number,
    degree1_levels,
    degree_for,
    genus_rh,
    index_mu,
    reducible_obstruction,
)
from .config import get_settings
from .forms import hauptmodul, lambda_series
from .frobenius import indicial_roots, log_residual, ode_residual, ratio_solution, series, solve_log, solve_power
from .numeric import SAMPLE_POINTS, EvalConfig, eval_series, h_laws, lambda_laws, schwarzian_fd
from .qseries import twist_half
from .schwarzian import verify_schwarz_eq

CheckFn = Callable[[], Tuple[bool, str]]


class Check(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    fn: CheckFn


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    ok: bool
    detail: str
    seconds: float


class CheckManager:
    """Named verification checks, run serially or on a thread pool."""

    def __init__(self):
        self.checks: Dict[str, Check] = {}

    def register_check(self, check: Check) -> None:
        if check.name in self.checks:
            raise ValueError(f"Check with name {check.name} is already registered.")
        self.checks[check.name] = check

    def get_check(self, name: str) -> Optional[Check]:
        return self.checks.get(name)

    def list_checks(self) -> List[str]:
        return list(self.checks.keys())

    def unregister_check(self, name: str) -> None:
        if name in self.checks:
            del self.checks[name]

    async def run(self, jobs: int = 1) -> List[CheckResult]:
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
            tasks = [loop.run_in_executor(pool, _timed, check) for check in self.checks.values()]
            return list(await asyncio.gather(*tasks))


def _timed(check: Check) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = check.fn()
    except Exception as e:
        ok, detail = False, f"{type(e).__name__}: {e}"
    return CheckResult(name=check.name, ok=ok, detail=detail, seconds=time.perf_counter() - start)


# -- the acceptance battery -----------------------------------------------


def _lambda_identity() -> Tuple[bool, str]:
    report = verify_schwarz_eq(lambda_series(Fraction(21, 2)), Fraction(1, 2), 10)
    return report.ok, f"sigma(lambda) + E4/8 = 0 mod q^{report.checked_order}"


def _hauptmodul_identity(m: int) -> CheckFn:
    def run() -> Tuple[bool, str]:
        report = verify_schwarz_eq(hauptmodul(m, 10 + Fraction(1, m)), Fraction(1, m), 10)
        return report.ok, f"sigma(f_{m}) + E4/(2*{m * m}) = 0 mod q^10"

    return run


def _catalog_entry(e) -> CheckFn:
    def run() -> Tuple[bool, str]:
        report = verify_entry(e)
        if report.d != degree_for(e.m, e.n):
            return False, f"catalog d={report.d} but degree_for gives {degree_for(e.m, e.n)}"
        return report.ok, f"leading {report.leading_coefficient} q^{report.leading_exponent}; {report.relation}"

    return run


def _catalog_pairs() -> Tuple[bool, str]:
    bad = []
    for e in entries():
        y1, y2 = pair_residuals(e)
        if not (y1.is_zero() and y2.is_zero()):
            bad.append(str(e.key))
    return not bad, "all pairs solve the ODE" if not bad else "failing: " + ", ".join(bad)


def _identity_suite(build: Callable[[Fraction], list], order: Fraction) -> CheckFn:
    def run() -> Tuple[bool, str]:
        reports = build(order)
        bad = [r.name for r in reports if not r.ok]
        return not bad, f"{len(reports)} identities mod q^{order}" if not bad else "failing: " + "; ".join(bad)

    return run


def _frobenius_power() -> Tuple[bool, str]:
    for r in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 2), Fraction(2, 5)):
        for rho in indicial_roots(r):
            if not ode_residual(series(solve_power(rho, r, 40)), r).is_zero():
                return False, f"nonzero residual at r={r}, rho={rho}"
        if not verify_schwarz_eq(ratio_solution(r, 40), r).ok:
            return False, f"ratio solution fails at r={r}"
    return True, "power solutions and ratios verified"


def _frobenius_log() -> Tuple[bool, str]:
    details = []
    for r in (1, 2):
        sol = solve_log(r, 40)
        log_part, free_part = log_residual(sol, r)
        if not (log_part.is_zero() and free_part.is_zero()):
            return False, f"log solution residual nonzero at r={r}"
        details.append(f"k_log(r={r}) = {sol.log_coeff}")
    return True, ", ".join(details)


def _classification() -> Tuple[bool, str]:
    for m in range(1, 31):
        for n in range(1, 31):
            verdict = admissible_pair(n, m)
            expected = m in LEVELS and Fraction(n, m).denominator == m
            if verdict.admissible != expected:
                return False, f"admissible({n}/{m}) = {verdict.admissible}"
    if degree1_levels() != [(2, 3), (3, 4), (4, 6), (5, 12)]:
        return False, "degree-1 levels mismatch"
    for m in LEVELS:
        if genus_rh(index_mu(m), 0, 0, cusp_number(m)) != 0:
            return False, f"Gamma({m}) genus is not zero"
    if not reducible_obstruction(10).holds:
        return False, "obstruction witness failed"
    return True, "admissibility, degree-1 levels, genus and obstruction"


def _laws(cfg: EvalConfig) -> Tuple[bool, str]:
    for tau in SAMPLE_POINTS:
        for report in (lambda_laws(tau, cfg), h_laws(tau, cfg)):
            if not report.ok:
                return False, f"laws fail at tau={tau}"
    lam = lambda_series(40)
    for tau in SAMPLE_POINTS:
        shifted, _ = eval_series(lam, tau + 1, cfg)
        twisted, _ = eval_series(twist_half(lam), tau, cfg)
        if abs(shifted - twisted) >= cfg.tol:
            return False, f"twist_half disagrees with tau+1 at {tau}"
    return True, f"10 laws at {len(SAMPLE_POINTS)} points, tol {cfg.tol}"


def _finite_differences(cfg: EvalConfig) -> Tuple[bool, str]:
    lam = lambda_series(40)
    coarse = schwarzian_fd(lam, Fraction(1, 2), 1.3j, 2e-3, cfg)
    fine = schwarzian_fd(lam, Fraction(1, 2), 1.3j, 1e-3, cfg)
    ratio = coarse.deviation / fine.deviation
    ok = fine.deviation < 1e-5 and 3.0 < ratio < 5.0
    return ok, f"deviation {fine.deviation:.3g} at step 1e-3, ratio {ratio:.2f} on halving"


def default_manager() -> CheckManager:
    settings = get_settings()
    cfg = EvalConfig.from_settings()
    manager = CheckManager()
    manager.register_check(Check(name="lambda", description="Schwarzian of lambda", fn=_lambda_identity))
    for m in LEVELS:
        manager.register_check(Check(name=f"f{m}", description=f"Hauptmodul f_{m}", fn=_hauptmodul_identity(m)))
    for e in entries():
        name = "catalog {},{},{}".format(*e.key)
        manager.register_check(Check(name=name, description="catalog entry", fn=_catalog_entry(e)))
    manager.register_check(Check(name="catalog pairs", description="y1, y2 from h", fn=_catalog_pairs))
    manager.register_check(Check(
        name="theta ode", description="theta quotient solutions",
        fn=_identity_suite(theta_quotient_identities, settings.default_order),
    ))
    manager.register_check(Check(
        name="weight 2", description="weight-2 lambda identities",
        fn=_identity_suite(weight2_lambda_identities, settings.default_order),
    ))
    manager.register_check(Check(
        name="jacobi", description="Jacobi and eta-quotient identities",
        fn=_identity_suite(jacobi_identities, settings.identity_order),
    ))
    manager.register_check(Check(name="frobenius", description="power solutions", fn=_frobenius_power))
    manager.register_check(Check(name="frobenius log", description="log solutions", fn=_frobenius_log))
    manager.register_check(Check(name="classify", description="classification", fn=_classification))
    manager.register_check(Check(name="laws", description="transformation laws", fn=lambda: _laws(cfg)))
    manager.register_check(Check(name="fd", description="finite differences", fn=lambda: _finite_differences(cfg)))
    return manager


def run_selftest(jobs: Optional[int] = None, manager: Optional[CheckManager] = None) -> List[CheckResult]:
    jobs = get_settings().jobs if jobs is None else jobs
    manager = default_manager() if manager is None else manager
    return asyncio.run(manager.run(jobs))


def render(results: List[CheckResult], console: Console) -> None:
    table = Table(title="qschwarz selftest")
    table.add_column("check", style="cyan")
    table.add_column("ok")
    table.add_column("seconds", justify="right")
    table.add_column("detail", style="dim")
    for r in results:
        table.add_row(r.name, "[green]✔[/green]" if r.ok else "[red]✘[/red]", f"{r.seconds:.2f}", r.detail)
    console.print(table)
    passed = sum(r.ok for r in results)
    style = "bold green" if passed == len(results) else "bold red"
    console.print(f"[{style}]{passed}/{len(results)} checks passed[/{style}]")
