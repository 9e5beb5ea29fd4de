"""Linear complexity commands: predict, measure, verify and identities."""

import logging
from pathlib import Path
from typing import Optional

import click

from ..deps import get_field_ctx, get_storage_service
from ..errors import EXIT_DISAGREEMENT
from ..services.grid import grid_parameters, run_grid
from ..services.lc_engine import (
    BRANCH_IN_D0,
    BRANCH_NOT_IN_D0,
    LcReport,
    measure,
    predict_lc,
    report_rows,
    two_in_d0,
    verify_identities,
)
from .common import RunConfig, command_guard, params_options

logger = logging.getLogger(__name__)

METHOD_CHOICE = click.Choice(["bm", "gcd", "roots", "all"])
REPORT_FORMAT = click.Choice(["json", "csv"])


def _emit(reports: list[LcReport], fmt: str, output: Optional[Path]) -> None:
    if fmt == "json":
        if len(reports) == 1:
            click.echo(reports[0].model_dump_json(indent=2))
        else:
            click.echo("[" + ",\n".join(r.model_dump_json() for r in reports) + "]")
    else:
        click.echo(report_rows(reports).to_csv(index=False), nl=False)
    if output:
        get_storage_service(output.parent).save_reports(reports, output, fmt)


@click.command("predict")
@params_options
@click.option("--format", "fmt", type=REPORT_FORMAT, default="json", show_default=True)
def predict_command(p, n, e, b, g, fmt):
    """Closed-form linear complexity (exit 3 when it does not apply)."""
    with command_guard():
        config = RunConfig(command="predict", p=p, n=n, e=e, b=b, g=g, format=fmt)
        config.check()
        params = config.params()
        report = LcReport(
            params=params,
            branch=BRANCH_IN_D0 if two_in_d0(params) else BRANCH_NOT_IN_D0,
            predicted=predict_lc(params),
            agree=True,
        )
        _emit([report], config.format, None)


@click.command("measure")
@params_options
@click.option("--method", type=METHOD_CHOICE, default="all", show_default=True)
@click.option("--format", "fmt", type=REPORT_FORMAT, default="json", show_default=True)
@click.option("--orbit-reduce", is_flag=True, help="Evaluate one point per Frobenius orbit when counting roots.")
@click.option("--cap-period", type=int)
@click.option("--cap-degree", type=int)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Also save the report.")
def measure_command(p, n, e, b, g, method, fmt, orbit_reduce, cap_period, cap_degree, output):
    """Measure linear complexity; exit 1 if the methods or the prediction disagree."""
    with command_guard():
        config = RunConfig(
            command="measure", p=p, n=n, e=e, b=b, g=g, method=method, format=fmt,
            orbit_reduce=orbit_reduce, cap_period=cap_period, cap_degree=cap_degree, output=output,
        )
        config.check()
        report = measure(
            config.params(),
            methods=config.methods(),
            cap_period=config.cap_period,
            cap_degree=config.cap_degree,
            orbit_reduce=config.orbit_reduce,
        )
        _emit([report], config.format, config.output)
        if not report.agree:
            raise SystemExit(EXIT_DISAGREEMENT)


@click.command("verify")
@click.option("--p-max", type=int, required=True, help="Largest prime in the grid.")
@click.option("--n-max", type=int, default=1, show_default=True, help="Largest exponent in the grid.")
@click.option("--all-b", is_flag=True, help="Sweep every offset b instead of {0, 1, d_n/2, d_n - 1}.")
@click.option("--method", type=METHOD_CHOICE, default="all", show_default=True)
@click.option("--format", "fmt", type=REPORT_FORMAT, default="csv", show_default=True)
@click.option("--workers", type=int, help="Worker processes.")
@click.option("--cap-period", type=int)
@click.option("--cap-degree", type=int)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Also save the reports.")
def verify_command(p_max, n_max, all_b, method, fmt, workers, cap_period, cap_degree, output):
    """Reproduce the closed form over a parameter grid; exit 0 iff every row agrees."""
    with command_guard():
        config = RunConfig(
            command="verify", p_max=p_max, n_max=n_max, all_b=all_b, method=method, format=fmt,
            workers=workers, cap_period=cap_period, cap_degree=cap_degree, output=output,
        )
        config.check()
        rows, skipped = grid_parameters(config.p_max, config.n_max, config.cap_period, config.all_b)
        if skipped:
            click.echo(f"skipped Wieferich primes: {', '.join(map(str, skipped))}", err=True)
        if not rows:
            click.echo("no parameters in range")
            return

        reports = run_grid(
            rows,
            methods=config.methods(),
            workers=config.workers,
            cap_period=config.cap_period,
            cap_degree=config.cap_degree,
        )
        _emit(reports, config.format, config.output)

        disagreeing = sum(not r.agree for r in reports)
        if disagreeing:
            click.echo(f"{disagreeing} of {len(reports)} rows disagree", err=True)
            raise SystemExit(EXIT_DISAGREEMENT)


@click.command("identities")
@params_options
@click.option("--sample-budget", type=int, help="Checks per identity family before sampling kicks in.")
@click.option("--seed", type=int, default=0, show_default=True, help="Sampling seed.")
@click.option("--cap-degree", type=int)
def identities_command(p, n, e, b, g, sample_budget, seed, cap_degree):
    """Check the class-polynomial identities; exit 0 iff every counted family holds."""
    with command_guard():
        config = RunConfig(
            command="identities", p=p, n=n, e=e, b=b, g=g,
            sample_budget=sample_budget, cap_degree=cap_degree,
        )
        config.check()
        params = config.params()
        ctx = get_field_ctx(params.p, params.n, config.cap_degree)
        report = verify_identities(params, ctx, config.sample_budget, seed)
        click.echo(report.model_dump_json(indent=2))
        if not report.all_passed:
            raise SystemExit(EXIT_DISAGREEMENT)
