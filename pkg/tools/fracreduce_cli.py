#!/usr/bin/env python3
"""
Fractional Reduction CLI Tool
"""
import json
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from core.config.manager import config_manager, get_config
from core.config.models import CliConfig, OutputFormat, SolveMethod, SolverConfig
from core.exceptions import (
    AlgebraError, FracReduceError, NoSolutionError, ParseError,
    ResidualAboveToleranceError, RootFindingError,
)
from core.logging import get_cli_logger
from algebra.conjugate import ConjugateResult
from eqparser.ast import EquationAst, symbols
from eqparser.binding import bind, operator_of
from eqparser.parser import parse
from eqparser.printer import format_genpoly, format_intpoly, format_operator
from operators.fractional import FracOperator, start_exponents_for
from operators.grid import GridFunction
from operators.special import mittag_leffler
from pipeline.executor import certify, convergence_study, solver_for
from pipeline.models import SolveReport, SolveReportRecord
from pipeline.reduction import conjugate_of, genpoly_to_operator

# diagnostics on stderr; stdout carries data only
console = Console(stderr=True)

EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_REDUCTION = 3
EXIT_NO_SOLUTION = 4
EXIT_RESIDUAL = 5


@contextmanager
def exit_codes(reduction_stage: bool = False):
    """Translate solver errors into the exit-code contract"""
    try:
        yield
    except ParseError as e:
        console.print(f"[red]Parse error: {e}[/red]")
        sys.exit(EXIT_PARSE)
    except (AlgebraError, RootFindingError) as e:
        console.print(f"[red]Reduction failed: {e}[/red]")
        sys.exit(EXIT_REDUCTION if reduction_stage else EXIT_FAILURE)
    except ResidualAboveToleranceError as e:
        console.print(f"[red]Rejected: {e}[/red]")
        sys.exit(EXIT_RESIDUAL)
    except NoSolutionError as e:
        console.print(f"[red]No solution: {e}[/red]")
        sys.exit(EXIT_NO_SOLUTION)
    except FracReduceError as e:
        console.print(f"[red]Failed: {e}[/red]")
        sys.exit(EXIT_FAILURE)


def _read_equation(text: str) -> EquationAst:
    if text == "-":
        text = sys.stdin.read()
    return parse(text)


def _bindings(ast: EquationAst, rhs_csv: Optional[str]) -> Dict[str, GridFunction]:
    """`name=path` binds one symbol; a bare path binds the only symbol of the right-hand side"""
    if not rhs_csv:
        return {}
    if "=" in rhs_csv:
        name, path = rhs_csv.split("=", 1)
    else:
        names = symbols(ast.rhs)
        if len(names) != 1:
            raise click.UsageError("--rhs-csv without a name needs exactly one symbol on the right-hand side")
        name, path = names[0], rhs_csv
    return {name.strip(): GridFunction.from_csv(path)}


def _cli_config(subcommand: str, **options) -> CliConfig:
    solver = get_config().solver
    values = {key: value for key, value in options.items() if value is not None}
    values.setdefault("grid_n", solver.grid_n)
    values.setdefault("tol", solver.tol)
    values.setdefault("method", solver.method)
    values.setdefault("minimal", solver.minimal)
    try:
        return CliConfig(subcommand=subcommand, **values)
    except ValidationError as e:
        raise click.BadParameter(str(e))


@click.group()
@click.option('--config', '-c', default='config.json', help='Configuration file path')
@click.option('--log-level', '-l', default=None, help='Log level (overrides config and LOG_LEVEL)')
def cli(config, log_level):
    """Fractional integral equation reducer and solver"""
    config_manager.config_path = Path(config)
    app = config_manager.reload_config()
    level = (log_level or app.logging.level).upper()
    get_cli_logger(level, app.logging.console, app.logging.log_file)


# reduce

def _conjugate_record(res: ConjugateResult) -> dict:
    return {
        "p_hat": format_genpoly(res.p_hat),
        "t_hat": format_operator(genpoly_to_operator(res.p_hat, 0)),
        "reduced": format_intpoly(res.reduced),
        "p_hat_degree": str(res.p_hat_degree),
        "degree": res.degree,
        "integrality_defect": res.integrality_defect,
        "exact": res.exact,
    }


@cli.command()
@click.argument('equation')
@click.option('--format', '-f', 'output_format', type=click.Choice(['text', 'json']), default='text',
              help='Output format')
def reduce(equation, output_format):
    """Print the conjugate operators and the reduced polynomial of EQUATION ('-' reads stdin)"""
    with exit_codes(reduction_stage=True):
        ast = _read_equation(equation)
        T = operator_of(ast)
        cfg = get_config().solver
        naive = conjugate_of(T, minimal=False, cfg=cfg)
        minimal = conjugate_of(T, minimal=True, cfg=cfg)

    record = {
        "p": format_genpoly(naive.p),
        "q": naive.q,
        "naive": _conjugate_record(naive),
        "minimal": _conjugate_record(minimal),
    }
    if output_format == 'json':
        click.echo(json.dumps(record, indent=2))
        return

    click.echo(f"p(X)              = {record['p']}")
    click.echo(f"q                 = {record['q']}")
    for name in ("naive", "minimal"):
        part = record[name]
        click.echo(f"{name + ' p_hat(X)':<18}= {part['p_hat']}")
        click.echo(f"{name + ' reduced(X)':<18}= {part['reduced']}")
        click.echo(f"{name + ' degrees':<18}= p_hat {part['p_hat_degree']}, reduced {part['degree']}")
        if not part["exact"]:
            click.echo(f"{name + ' defect':<18}= {part['integrality_defect']:.3e}")


# solve

def _print_report(report: SolveReport, output_format: OutputFormat, csv_path: Optional[str]):
    if output_format == OutputFormat.JSON:
        click.echo(SolveReportRecord.from_report(report, csv_path).to_json())
        return
    if output_format == OutputFormat.CSV:
        click.echo(report.solution_grid.to_csv_text(), nl=False)
        return

    click.echo(f"method:    {report.method.value}")
    click.echo(f"accepted:  {'yes' if report.accepted else 'no'}")
    click.echo(f"residual:  {report.residual_sup:.3e} (tolerance {report.tol:.3e}, n={report.grid_n})")
    click.echo(f"T_hat:     {format_operator(report.t_hat)}")
    click.echo(f"reduced:   {format_reduced(report)}")
    if report.direct_fallback:
        click.echo("route:     direct stepping of the original equation")
    if report.closed_form:
        click.echo(f"solution:  {report.closed_form}")
    if csv_path:
        click.echo(f"samples:   {csv_path}")
    for line in report.diagnostics:
        console.print(f"[dim]{line}[/dim]")


def format_reduced(report: SolveReport) -> str:
    """T T_hat as an operator in I"""
    coeffs = list(report.reduced_equation.coeffs) + [0] * report.strip
    order = len(coeffs) - 1
    terms = tuple((c, order - i) for i, c in enumerate(coeffs))
    return format_operator(FracOperator(0, terms))


@cli.command()
@click.argument('equation')
@click.option('--n', 'grid_n', type=int, default=None, help='Grid intervals')
@click.option('--tol', type=float, default=None, help='Residual tolerance')
@click.option('--method', type=click.Choice([m.value for m in SolveMethod]), default=None,
              help='Solution method')
@click.option('--naive', is_flag=True, help='Use the per-root conjugate instead of the minimal one')
@click.option('--format', '-f', 'output_format', type=click.Choice([f.value for f in OutputFormat]),
              default='text', help='Output format')
@click.option('--rhs-csv', default=None, help='Samples for the right-hand side symbol: [name=]path')
@click.option('--out', '-o', default=None, help='Write solution samples to this CSV file')
def solve(equation, grid_n, tol, method, naive, output_format, rhs_csv, out):
    """Solve EQUATION and certify the answer by its residual"""
    options = _cli_config("solve", grid_n=grid_n, tol=tol, method=method, minimal=False if naive else None,
                          output_format=output_format, rhs_csv=Path(rhs_csv.split("=", 1)[-1]) if rhs_csv else None,
                          out=out)
    report = None
    with exit_codes(reduction_stage=True):
        ast = _read_equation(equation)
        eq = bind(ast, _bindings(ast, rhs_csv))
        solver = solver_for(options.method, options.solver_config(get_config().solver))
        try:
            report = solver.solve(eq)
        except ResidualAboveToleranceError as e:
            report = e.report
            _emit(report, options)
            raise
    _emit(report, options)


def _emit(report: SolveReport, options: CliConfig):
    csv_path = None
    if options.out:
        report.solution_grid.to_csv(options.out)
        csv_path = str(options.out)
    _print_report(report, options.output_format, csv_path)


# verify

@cli.command()
@click.argument('equation')
@click.argument('solution_csv', type=click.Path(exists=True, dir_okay=False))
@click.option('--tol', type=float, default=None, help='Residual tolerance')
@click.option('--rhs-csv', default=None, help='Samples for the right-hand side symbol: [name=]path')
@click.option('--format', '-f', 'output_format', type=click.Choice(['text', 'json']), default='text',
              help='Output format')
def verify(equation, solution_csv, tol, rhs_csv, output_format):
    """Residual of the samples in SOLUTION_CSV as a solution of EQUATION"""
    options = _cli_config("verify", tol=tol)
    with exit_codes():
        ast = _read_equation(equation)
        eq = bind(ast, _bindings(ast, rhs_csv))
        x = GridFunction.from_csv(solution_csv)
        solver = get_config().solver.model_copy(update={"tol": options.tol})
        start = start_exponents_for(eq.T.common_denominator()) if solver.start_correction else ()
        value, limit, note = certify(eq, x, solver, start)
    if note:
        console.print(f"[yellow]{note}[/yellow]")

    accepted = value <= limit
    if output_format == 'json':
        click.echo(json.dumps({"residual_sup": value, "tol": limit, "grid_n": x.n, "accepted": accepted}, indent=2))
    else:
        click.echo(f"residual:  {value:.3e} (tolerance {limit:.3e}, n={x.n})")
        click.echo(f"accepted:  {'yes' if accepted else 'no'}")
    if not accepted:
        sys.exit(EXIT_RESIDUAL)


# ml

def _real(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a real number: {text}")


@cli.command()
@click.argument('alpha')
@click.argument('beta')
@click.argument('z')
@click.option('--bound', type=float, default=None, help='Series bound (default from config)')
def ml(alpha, beta, z, bound):
    """Two-parameter Mittag-Leffler function E_{ALPHA,BETA}(Z)"""
    try:
        arg = complex(z.replace("i", "j"))
    except ValueError:
        raise click.BadParameter(f"not a complex number: {z}")
    with exit_codes():
        value = mittag_leffler(_real(alpha), _real(beta), arg, bound or get_config().solver.ml_bound)
    click.echo(repr(value.real) if value.imag == 0 else repr(value))


# convergence

@cli.command()
@click.argument('equation')
@click.option('--ns', default='256,512,1024,2048', help='Comma-separated grid sizes')
@click.option('--method', type=click.Choice([m.value for m in SolveMethod]), default=None,
              help='Solution method')
@click.option('--rhs-csv', default=None, help='Samples for the right-hand side symbol: [name=]path')
@click.option('--format', '-f', 'output_format', type=click.Choice(['text', 'json']), default='text',
              help='Output format')
def convergence(equation, ns, method, rhs_csv, output_format):
    """Residual and observed order of EQUATION over several grids"""
    try:
        n_list = [int(item) for item in ns.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"grid sizes must be integers: {ns}")
    options = _cli_config("convergence", method=method)
    with exit_codes(reduction_stage=True):
        ast = _read_equation(equation)
        eq = bind(ast, _bindings(ast, rhs_csv))
        rows = convergence_study(eq, n_list, options.solver_config(get_config().solver), options.method)

    if output_format == 'json':
        click.echo(json.dumps([
            {"n": row.n, "residual_sup": row.residual_sup, "observed_order": row.observed_order}
            for row in rows], indent=2))
        return

    table = Table(title=f"Convergence ({options.method.value} method)")
    table.add_column("n", style="cyan", justify="right")
    table.add_column("residual", style="green", justify="right")
    table.add_column("order", style="yellow", justify="right")
    for row in rows:
        order = "-" if row.observed_order is None else f"{row.observed_order:.2f}"
        table.add_row(str(row.n), f"{row.residual_sup:.3e}", order)
    Console().print(table)


# config

@cli.command(name="config")
@click.option('--set', 'assignments', multiple=True, metavar='KEY=VALUE', help='Override a solver setting')
@click.option('--save', is_flag=True, help='Write the effective configuration to the config file')
def show_config(assignments, save):
    """Show the effective configuration, optionally changing solver settings"""
    updates = {}
    for item in assignments:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in SolverConfig.model_fields:
            raise click.BadParameter(f"expected KEY=VALUE with a solver setting, got {item!r}", param_hint="--set")
        updates[key] = value.strip()
    if updates:
        try:
            config_manager.update_solver_config(updates)
        except ValidationError as e:
            raise click.BadParameter(str(e), param_hint="--set")

    if save:
        if not config_manager.save_config():
            console.print(f"[red]Failed to save configuration to {config_manager.config_path}[/red]")
            sys.exit(EXIT_FAILURE)
        console.print(f"[green]✓ Configuration saved to {config_manager.config_path}[/green]")
    click.echo(get_config().model_dump_json(indent=2))


if __name__ == '__main__':
    cli()
