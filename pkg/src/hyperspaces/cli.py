"""Command-line front end.

Exit codes: 0 every check passed, 1 violations found, 2 input error,
3 budget or cap exceeded.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import report as rpt
from .checks import CHECKS, applicable, gram_schmidt_check, run_check
from .fileformat import ParseError, parse_elements, parse_structure
from .fixtures import FIXTURES, write_fixtures
from .search import (
    MAX_ORDER,
    DEFAULT_BUDGET,
    SearchSpec,
    enumerate_hyperfields,
    enumerate_hypergroups,
    write_catalog,
)
from .setalg import BudgetExceededError, StructureError


def _emit(report: dict, report_path, as_json: bool) -> None:
    rpt.validate(report)
    text = json.dumps(report, indent=2)
    if report_path:
        Path(report_path).write_text(text + "\n")
    click.echo(text if as_json else rpt.render(report))
    sys.exit(report["exit_code"])


def _failure(command, file, start, exc, report_path, as_json, checks=()):
    code = rpt.EXIT_BUDGET if isinstance(exc, BudgetExceededError) else rpt.EXIT_INPUT
    report = rpt.build(command, file, list(checks), time.perf_counter() - start,
                       exit_code=code, error=str(exc))
    _emit(report, report_path, as_json)


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_structure(text)


_report_opt = click.option("--report", "report_path", type=click.Path(dir_okay=False),
                           help="Also write the JSON report to this path.")
_json_opt = click.option("--json", "as_json", is_flag=True,
                         help="Print the JSON report instead of the text rendering.")
_cap_opt = click.option("--max-violations", default=16, show_default=True, type=click.IntRange(1),
                        help="Stop collecting an axiom's violations after this many.")


@click.group()
@click.version_option(package_name="hyperspaces")
def main():
    """Exact hyperstructures, hypervector spaces and inner products."""


@main.command()
@click.argument("file")
@click.option("--check", "checks", multiple=True, metavar="ID",
              help="Check to run (repeatable). See --list.")
@click.option("--all", "run_all", is_flag=True, help="Run every check the file supports.")
@click.option("--list", "list_checks", is_flag=True, help="List the known check ids and exit.")
@click.option("--jobs", default=1, type=click.IntRange(1),
              help="Accepted for symmetry with search; checks run in one process.")
@_cap_opt
@_report_opt
@_json_opt
def verify(file, checks, run_all, list_checks, jobs, max_violations, report_path, as_json):
    """Run axiom and theorem checks on a structure FILE."""
    if list_checks:
        click.echo("\n".join(CHECKS))
        return
    start = time.perf_counter()
    results = []
    try:
        doc = _load(file)
        ids = list(checks)
        if run_all:
            ids += [c for c in applicable(doc) if c not in ids]
        if not ids:
            raise ParseError("nothing to verify: give --check ID or --all")
        unknown = [c for c in ids if c not in CHECKS]
        if unknown:
            raise ParseError(f"unknown check {unknown[0]!r}; known: {', '.join(CHECKS)}")
        for cid in ids:
            results.append(run_check(doc, cid, max_violations).to_json())
    except (StructureError, ValueError) as exc:
        _failure("verify", file, start, exc, report_path, as_json, results)
    report = rpt.build("verify", file, results, time.perf_counter() - start)
    _emit(report, report_path, as_json)


@main.command("gram-schmidt")
@click.argument("file")
@click.argument("vectors", nargs=-1)
@_cap_opt
@_report_opt
@_json_opt
def gram_schmidt_cmd(file, vectors, max_violations, report_path, as_json):
    """Orthogonalize VECTORS, written like "(1, 1)", in the space of FILE.

    Without VECTORS the file's gram_schmidt list is used.
    """
    start = time.perf_counter()
    try:
        doc = _load(file)
        if doc.space is None or doc.inner is None:
            raise ParseError("gram-schmidt needs a [space] with an inner product")
        vs = list(parse_elements(", ".join(vectors), doc.space.vectors.carrier)) or None
        if vs is None and doc.gram_schmidt is None:
            raise ParseError("no vectors given and the file declares no gram_schmidt list")
        result = gram_schmidt_check(doc, max_violations, vs).to_json()
    except (StructureError, ValueError) as exc:
        _failure("gram-schmidt", file, start, exc, report_path, as_json)
    report = rpt.build("gram-schmidt", file, [result], time.perf_counter() - start)
    _emit(report, report_path, as_json)


@main.command()
@click.option("--kind", type=click.Choice(sorted(MAX_ORDER)), default="hypergroup",
              show_default=True)
@click.option("--order", required=True, type=int, help="Carrier size.")
@click.option("--commutative/--any", default=True, show_default=True,
              help="Restrict hypergroups to commutative tables (hyperfields always are).")
@click.option("--zero", type=int, help="Designate this element as the zero.")
@click.option("--one", type=int, help="Designate this element as the one (hyperfields).")
@click.option("--jobs", default=1, type=click.IntRange(1), show_default=True)
@click.option("--budget", default=DEFAULT_BUDGET, type=click.IntRange(1), show_default=True,
              help="Maximum number of tables to examine.")
@click.option("--no-prune", is_flag=True, help="Disable symmetry pruning.")
@click.option("--out", type=click.Path(file_okay=False),
              help="Write catalog files and index.tsv into this directory.")
@_report_opt
@_json_opt
def search(kind, order, commutative, zero, one, jobs, budget, no_prune, out, report_path,
           as_json):
    """Enumerate small hypergroups or hyperfields up to relabeling."""
    start = time.perf_counter()
    try:
        spec = SearchSpec(order, kind, commutative or kind == "hyperfield", zero, one,
                          budget, not no_prune)
        run = enumerate_hypergroups if kind == "hypergroup" else enumerate_hyperfields
        census = run(spec, jobs)
    except (StructureError, ValueError) as exc:
        _failure("search", None, start, exc, report_path, as_json)
    index = str(write_catalog(census.entries, out)) if out else None
    summary = {"kind": kind, "order": order, "commutative": spec.commutative,
               "classes": len(census.entries), "examined": census.examined,
               "partial": census.partial, "keys": sorted(census.keys), "index": index}
    if census.partial:
        report = rpt.build("search", None, [], time.perf_counter() - start,
                           exit_code=rpt.EXIT_BUDGET,
                           error=f"budget of {budget} tables reached; the census is partial",
                           search=summary)
    else:
        report = rpt.build("search", None, [], time.perf_counter() - start, search=summary)
    _emit(report, report_path, as_json)


@main.command()
@click.argument("directory", type=click.Path(file_okay=False))
@click.option("--name", "names", multiple=True, type=click.Choice(sorted(FIXTURES)),
              help="Only write these fixtures (repeatable).")
@_report_opt
@_json_opt
def fixtures(directory, names, report_path, as_json):
    """Write the built-in fixture structure files into DIRECTORY."""
    start = time.perf_counter()
    paths = write_fixtures(directory, names or None)
    report = rpt.build("fixtures", None, [], time.perf_counter() - start,
                       files=[str(p) for p in paths])
    _emit(report, report_path, as_json)


if __name__ == "__main__":
    main()
