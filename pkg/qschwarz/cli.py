import json
from fractions import Fraction
from typing import Any, Optional, Tuple

import click
from rich.console import Console
from rich.table import Table
from rich.traceback import install

from .catalog import build_h, entries, entry, verify_entry
from .classify import admissible, degree1_levels
from .config import get_settings
from .errors import QSchwarzError
from .forms import FormId, form
from .frobenius import indicial_roots, log_residual, ode_residual, series, solve_log, solve_power
from .numeric import SAMPLE_POINTS, EvalConfig, eval_series, h_laws, lambda_laws
from .qseries import as_fraction
from .schwarzian import justified_order, verify_schwarz_eq
from .selftest import render, run_selftest

out = Console()
err = Console(stderr=True)


class RationalType(click.ParamType):
    """Exact ``p/q`` (or integer) arguments; decimals are rejected."""

    name = "p/q"

    def convert(self, value, param, ctx) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return as_fraction(value)
        except (ValueError, ZeroDivisionError, TypeError):
            self.fail(f"{value!r} is not an exact rational p/q", param, ctx)


class ComplexType(click.ParamType):
    """``a,b`` for the point ``a + b i``."""

    name = "a,b"

    def convert(self, value, param, ctx) -> complex:
        if isinstance(value, complex):
            return value
        try:
            re, im = (float(part) for part in value.split(","))
        except ValueError:
            self.fail(f"{value!r} is not a point a,b", param, ctx)
        return complex(re, im)


class EntryType(click.ParamType):
    """``m,n,d`` naming a catalog entry."""

    name = "m,n,d"

    def convert(self, value, param, ctx) -> Tuple[int, int, int]:
        try:
            m, n, d = (int(part) for part in value.split(","))
        except ValueError:
            self.fail(f"{value!r} is not a triple m,n,d", param, ctx)
        return m, n, d


RATIONAL = RationalType()
COMPLEX = ComplexType()
ENTRY = EntryType()
FORM_IDS = click.Choice([f.value for f in FormId])


def _emit(ctx: click.Context, payload: Any, ok: bool = True) -> None:
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        _render_text(payload)
    if not ok:
        ctx.exit(1)


def _render_text(payload: Any) -> None:
    rows = payload if isinstance(payload, list) else [payload]
    if not rows or not isinstance(rows[0], dict):
        out.print(payload)
        return
    table = Table(show_lines=True)
    keys = list(rows[0].keys())
    for key in keys:
        table.add_column(key, overflow="fold")
    for row in rows:
        table.add_row(*(_cell(row.get(key)) for key in keys))
    out.print(table)


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _guard(fn, *args, **kwargs):
    # errors raised by argument values are usage errors
    try:
        return fn(*args, **kwargs)
    except (QSchwarzError, ValueError, KeyError) as e:
        raise click.UsageError(str(e))


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", help="Output format")
@click.pass_context
def cli(ctx: click.Context, fmt: str):
    """Exact q-expansions and the Schwarzian equation {h, tau} = s E4."""
    install()  # rich tracebacks for unexpected failures
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt


@cli.command()
@click.option("--form", "form_id", type=FORM_IDS, required=True, help="Form to expand")
@click.option("--order", type=RATIONAL, required=True, help="Expansion order p/q")
@click.pass_context
def expand(ctx: click.Context, form_id: str, order: Fraction):
    """Print the q-expansion of a form modulo q^order."""
    _emit(ctx, _guard(form, form_id, order).to_json())


@cli.command("schwarz-check")
@click.option("--form", "form_id", type=FORM_IDS, help="Form to use as h")
@click.option("--entry", "key", type=ENTRY, help="Catalog entry m,n,d to use as h")
@click.option("--r", "r", type=RATIONAL, required=True, help="Parameter r with s = 2 pi^2 r^2")
@click.option("--order", type=RATIONAL, default=None, help="Check order p/q")
@click.pass_context
def schwarz_check(ctx: click.Context, form_id: Optional[str], key, r: Fraction, order: Optional[Fraction]):
    """Verify sigma(h) + (r^2/2) E4 = 0 modulo q^order."""
    if (form_id is None) == (key is None):
        raise click.UsageError("give exactly one of --form and --entry")
    order = get_settings().default_order if order is None else order

    def build():
        if key is not None:
            e = entry(*key)
            return build_h(e, order + e.r)
        h = form(form_id, order + 1)
        v = h.trunc - justified_order(h)
        return h if v <= 1 else form(form_id, order + v)

    h = _guard(build)
    report = _guard(verify_schwarz_eq, h, r, order)
    _emit(ctx, report.to_json(), report.ok)


@cli.command()
@click.option("--r", "r", type=RATIONAL, required=True, help="Parameter r >= 0")
@click.option("--terms", type=int, default=None, help="Number of coefficients K")
@click.option("--root", type=click.Choice(["upper", "lower"]), default="upper", help="Indicial root r/2 or -r/2")
@click.option("--log", "use_log", is_flag=True, default=False, help="Logarithmic solution (integer r)")
@click.pass_context
def frobenius(ctx: click.Context, r: Fraction, terms: Optional[int], root: str, use_log: bool):
    """Frobenius solution at the cusp of D^2 y = (r^2/4) E4 y."""
    if use_log:
        sol = _guard(solve_log, r, terms)
        log_part, free_part = log_residual(sol, r)
        ok = log_part.is_zero() and free_part.is_zero()
        residual_order = free_part.trunc
    else:
        upper, lower = _guard(indicial_roots, r)
        sol = _guard(solve_power, upper if root == "upper" else lower, r, terms)
        residual = ode_residual(series(sol), r)
        ok = residual.is_zero()
        residual_order = residual.trunc
    payload = sol.to_json()
    payload["residual_order"] = str(residual_order)
    payload["ok"] = ok
    _emit(ctx, payload, ok)


@cli.command("verify-catalog")
@click.option("--entry", "key", type=ENTRY, default=None, help="Only this entry m,n,d")
@click.option("--order", type=RATIONAL, default=None, help="Check order p/q")
@click.pass_context
def verify_catalog(ctx: click.Context, key, order: Optional[Fraction]):
    """Verify catalog entries; exit 1 if any check fails."""
    selected = [_guard(entry, *key)] if key else entries()
    reports = [_guard(verify_entry, e, order) for e in selected]
    _emit(ctx, [rep.to_json() for rep in reports], all(rep.ok for rep in reports))


@cli.command()
@click.option("--r", "r", type=RATIONAL, default=None, help="Parameter r = n/m")
@click.option("--list-degree1", is_flag=True, default=False, help="List degree-1 levels")
@click.pass_context
def classify(ctx: click.Context, r: Optional[Fraction], list_degree1: bool):
    """Decide whether s = 2 pi^2 r^2 gives a modular solution."""
    if list_degree1:
        _emit(ctx, [{"m": m, "nu_inf": nu} for m, nu in degree1_levels()])
        return
    if r is None:
        raise click.UsageError("give --r or --list-degree1")
    _emit(ctx, admissible(r).to_json())


@cli.command("eval")
@click.option("--form", "form_id", type=FORM_IDS, required=True, help="Form to evaluate")
@click.option("--tau", type=COMPLEX, required=True, help="Point a,b in the upper half-plane")
@click.option("--order", type=RATIONAL, default="40", help="Expansion order p/q")
@click.pass_context
def eval_cmd(ctx: click.Context, form_id: str, tau: complex, order: Fraction):
    """Evaluate a form numerically at tau."""
    value, tail = _guard(eval_series, _guard(form, form_id, order), tau, EvalConfig.from_settings())
    _emit(ctx, {"form": form_id, "tau": [tau.real, tau.imag], "value": [value.real, value.imag], "tail": tail})


@cli.command()
@click.option("--which", type=click.Choice(["lambda", "h234"]), required=True, help="Law family")
@click.option("--tau", type=COMPLEX, multiple=True, help="Sample point a,b (repeatable)")
@click.option("--tol", type=float, default=None, help="Tolerance")
@click.pass_context
def laws(ctx: click.Context, which: str, tau: Tuple[complex, ...], tol: Optional[float]):
    """Check transformation laws numerically."""
    cfg = EvalConfig.from_settings()
    if tol is not None:
        cfg = cfg.model_copy(update={"tol": tol})
    check = lambda_laws if which == "lambda" else h_laws
    reports = [_guard(check, t, cfg) for t in (tau or SAMPLE_POINTS)]
    _emit(ctx, [rep.to_json() for rep in reports], all(rep.ok for rep in reports))


@cli.command()
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker threads")
@click.pass_context
def selftest(ctx: click.Context, jobs: Optional[int]):
    """Run the full verification battery."""
    results = run_selftest(jobs)
    ok = all(r.ok for r in results)
    if ctx.obj["format"] == "json":
        click.echo(json.dumps([r.model_dump() for r in results], sort_keys=True))
    else:
        render(results, out)
    if not ok:
        err.print("[bold red]⛔  selftest failed[/bold red]")
        ctx.exit(1)


if __name__ == "__main__":
    cli()
