"""Command line: ``courant-shla verify PLAN`` and ``courant-shla list-checks``."""

from __future__ import annotations

import sys

import click

from .courant import MUTATIONS
from .planfile import SUITES, PlanError, grammar_text, load_plan_file
from .runner import list_checks, run_plan


@click.group()
def main():
    """Exact verification of Courant algebroid and L-infinity identities."""


@main.command()
@click.argument("plan_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, help="Override the plan seed.")
@click.option("--trials", type=int, help="Override trials per check.")
@click.option("--degree", type=int, help="Override the polynomial degree bound.")
@click.option("--coeff", type=int, help="Override the coefficient bound.")
@click.option("--suite", "suites", multiple=True, type=click.Choice(SUITES), help="Run only these suites (repeatable).")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
@click.option("--timings", is_flag=True, help="Include per-suite wall-clock times (makes output run-dependent).")
@click.option("--inject-fault", "faults", multiple=True, type=click.Choice(MUTATIONS), hidden=True)
def verify(plan_file, seed, trials, degree, coeff, suites, as_json, timings, faults):
    """Run the checks declared in PLAN_FILE.

    Exit status: 0 all checks pass, 1 some defect is nonzero, 2 bad input or
    an instance that cannot be constructed.
    """
    try:
        plan = load_plan_file(plan_file)
        plan = plan.with_overrides(seed=seed, trials=trials, degree=degree, coeff=coeff, suites=suites or None)
    except PlanError as exc:
        click.echo(f"{plan_file}: {exc}", err=True)
        sys.exit(2)
    report = run_plan(plan, mutations=faults, timings=timings)
    click.echo(report.to_json() if as_json else report.to_text(), nl=False)
    sys.exit(report.exit_code)


@main.command("list-checks")
def list_checks_cmd():
    """Print every check id with a one-line description."""
    for cid, doc in list_checks():
        click.echo(f"{cid:32s} {doc}")


@main.command()
def grammar():
    """Print the plan-file grammar."""
    click.echo(grammar_text(), nl=False)


if __name__ == "__main__":
    main()
