import logging
import sys

import click

from hyperverify import transforms
from hyperverify.appell import AppellParams, appell_f1, f1_integral, f1_series
from hyperverify.common import FileUtil, format_table, summarize
from hyperverify.config import load_config
from hyperverify.errors import HyperVerifyError, UnknownIdentity
from hyperverify.hypergeometric import PFQParams, gauss_2f1, gauss_sum, pfq_at_1
from hyperverify.identities import FAIL, check, lhs_main, rhs_main, sweep
from hyperverify.loggers import setup_loggers

logger = logging.getLogger(__name__)

EVAL_FUNCTIONS = {
    "gauss_2f1": (4, lambda a, b, c, z: gauss_2f1(a, b, c, z)),
    "gauss_sum": (3, gauss_sum),
    "pfq2": (3, lambda a, b, c: pfq_at_1(PFQParams((a, b), (c,)))),
    "pfq3": (5, lambda a, b, c, e, f: pfq_at_1(PFQParams((a, b, c), (e, f)))),
    "pfq4": (7, lambda a, b, c, g, e, f, h: pfq_at_1(PFQParams((a, b, c, g), (e, f, h)))),
    "f1_series": (6, lambda *p: f1_series(AppellParams(*p))),
    "f1_integral": (6, lambda *p: f1_integral(AppellParams(*p))),
    "appell_f1": (6, lambda *p: appell_f1(AppellParams(*p))),
    "kernel_a1": (3, transforms.kernel_a1),
    "closed_a6": (3, transforms.closed_a6),
    "closed_a7": (4, transforms.closed_a7),
    "brychkov_a3": (7, transforms.brychkov_a3),
    "rhs_main": (1, rhs_main),
    "lhs_main": (1, lhs_main),
}


def _format_value(result):
    return f"{result.value:.17g} {result.abs_error:.3g}"


@click.group()
@click.option("--verbose", is_flag=True, help="Log at DEBUG level.")
def cli(verbose):
    """Evaluate hypergeometric functions and verify the identities of the main double integral."""
    setup_loggers(logging.DEBUG if verbose else logging.INFO)


@cli.command()
@click.argument("identity_id")
@click.option("--d", "d", type=float, required=True, help="Parameter value.")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=None,
              help="Relative tolerance; defaults to the identity's own.")
@click.option("--seed", type=int, default=None)
@click.option("--mc-samples", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(), default=None)
def verify(identity_id, d, tol, seed, mc_samples, config_path):
    """Check one identity at one value of d."""
    try:
        config = load_config(config_path, seed=seed, mc_samples=mc_samples)
        report = check(identity_id, d, tol, config)
    except (UnknownIdentity, ValueError) as e:
        raise click.UsageError(str(e))
    click.echo(FileUtil.render_csv([report]), nl=False)
    if report.note:
        logger.info("%s: %s", report.id, report.note)
    sys.exit(1 if report.verdict == FAIL else 0)


@cli.command("sweep")
@click.option("--grid", default=None, help="Comma separated d values.")
@click.option("--tol", type=float, default=None)
@click.option("--slow/--no-slow", "slow_checks", default=None, help="Include Monte Carlo checks.")
@click.option("--seed", type=int, default=None)
@click.option("--mc-samples", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default=None)
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None)
@click.option("--config", "config_path", type=click.Path(), default=None)
def sweep_command(grid, tol, slow_checks, seed, mc_samples, workers, output_format, output_path, config_path):
    """Run every registered check over a grid of d values."""
    try:
        config = load_config(
            config_path, grid=grid, tol=tol, slow_checks=slow_checks, seed=seed,
            mc_samples=mc_samples, workers=workers, output_format=output_format,
            output_path=output_path,
        )
    except ValueError as e:
        raise click.UsageError(str(e))

    logger.info("Sweeping %d grid points", len(config.grid))
    reports = sweep(tol=config.tol, config=config)
    logger.info("Verdicts per identity:\n%s", format_table(summarize(reports)))

    if config.output_path:
        try:
            FileUtil.save_reports(reports, config.output_path, config.output_format)
        except OSError as e:
            click.echo(f"Error: cannot write {config.output_path}: {e}", err=True)
            sys.exit(2)
        logger.info("Wrote %d reports to %s", len(reports), config.output_path)
    else:
        render = FileUtil.render_csv if config.output_format == "csv" else FileUtil.render_json
        click.echo(render(reports), nl=False)
    sys.exit(1 if any(r.verdict == FAIL for r in reports) else 0)


@cli.command("eval", context_settings={"ignore_unknown_options": True})
@click.argument("function")
@click.argument("params", nargs=-1, type=float)
def eval_command(function, params):
    """Evaluate FUNCTION at PARAMS and print the value and its error estimate."""
    if function not in EVAL_FUNCTIONS:
        raise click.UsageError(f"unknown function {function!r}; known: {', '.join(sorted(EVAL_FUNCTIONS))}")
    arity, func = EVAL_FUNCTIONS[function]
    if len(params) != arity:
        raise click.UsageError(f"{function} takes {arity} parameters, got {len(params)}")
    try:
        result = func(*params)
    except HyperVerifyError as e:
        click.echo(f"Error: {type(e).__name__}: {e}", err=True)
        sys.exit(1)
    click.echo(_format_value(result))


def main():
    cli(prog_name="hyperverify")


if __name__ == "__main__":
    main()
