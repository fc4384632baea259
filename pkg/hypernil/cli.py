"""
Command-line front end.

Every command takes a problem file (or the name of a catalog entry), prints a
human summary to stdout and, with --out, writes a JSON report wrapped in a
provenance envelope. Exit codes: 0 success, 2 bad input or failed
validation, 3 computation-level error.
"""

import csv
import functools
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import click
from pydantic import ValidationError

from .albanese import albanese, h_albanese, toric_tower
from .catalog import resolve
from .config import LOG_LEVELS, get_settings
from .errors import HypernilError, InvariantViolation, ParseError, ProblemValidationError
from .lie import lower_central_series, upper_central_series
from .linalg import Subspace
from .models import ReportEnvelope, SpherePoint
from .problem import Problem, load_problem, validate_problem
from .saturation import closed_holomorphic_differential_dim, parallel_form_space_dim
from .structures import (
    ComplexStructure,
    HypercomplexTriple,
    check_abelian,
    check_abelian_hypercomplex,
    check_almost_complex,
    check_hypercomplex,
    check_integrable,
    check_quaternionic,
    series_invariance,
)
from .twistor import default_grid, exceptional_witness, scan

logger = logging.getLogger(__name__)


def handle_errors(f):
    """Map HypernilError onto its exit code"""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except HypernilError as e:
            logger.debug("command failed", exc_info=True)
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)

    return wrapper


def _load(argument: str, validate: bool = True) -> Tuple[Problem, Path]:
    path = resolve(argument)
    return load_problem(path, validate=validate), path


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _echo_summary(title: str, summary: Dict[str, Any]) -> None:
    click.echo(title)
    for key, value in summary.items():
        click.echo(f"  {key}: {_format(value)}")


def _write_report(command: str, path: Path, problem: Problem, report: Dict[str, Any], out: Optional[str]) -> None:
    if out is None:
        return
    envelope = ReportEnvelope(command=command, input=str(path), input_sha256=problem.source_sha256, report=report)
    Path(out).write_text(json.dumps(envelope.model_dump(), indent=2, sort_keys=True) + "\n")
    logger.info("wrote %s", out)


def _parse_subspace(text: Optional[str], problem: Problem) -> Optional[Subspace]:
    """Comma-separated basis indices or names, e.g. "0,1" or "z,t" """
    if text is None:
        return None
    g = problem.algebra
    indices = []
    for token in (t.strip() for t in text.split(",") if t.strip()):
        if token.isdigit() and int(token) < g.dim:
            indices.append(int(token))
        elif token in g.names:
            indices.append(g.names.index(token))
        else:
            raise ParseError(f"unknown basis vector '{token}'", location="--subspace")
    return Subspace.coordinate(g.dim, indices, problem.field)


def _parse_point(text: str) -> SpherePoint:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 3:
        raise ParseError("expected three rationals a,b,c", location="--point")
    try:
        return SpherePoint(a=parts[0], b=parts[1], c=parts[2])
    except ValidationError as e:
        raise ParseError(e.errors()[0]["msg"], location="--point")


out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here")
summary_option = click.option("--summary", is_flag=True, help="Write dimensions only")
structure_option = click.option("--structure", "label", default=None, help="Structure label (I, J, K name the triple)")


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Logging level; defaults to HYPERNIL_LOG_LEVEL",
)
@handle_errors
def cli(log_level):
    """Exact computations on nilpotent Lie algebras with complex and hypercomplex structures."""
    level = (log_level or get_settings().log_level).upper()
    logging.basicConfig(level=getattr(logging, level), format="%(levelname)s %(name)s: %(message)s")


@cli.command()
@click.argument("path")
@out_option
@handle_errors
def validate(path, out):
    """Check every axiom and print the first failing witness."""
    problem, source = _load(path, validate=False)
    report = validate_problem(problem)
    click.echo(f"{problem.name}")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        note = "" if c.required else " (informational)"
        witness = f" at {c.witness}" if c.witness and not c.passed else ""
        click.echo(f"  {status}  {c.name}{witness}{note}")
    _write_report("validate", source, problem, report.model_dump(mode="json") | {"ok": report.ok}, out)
    if not report.ok:
        raise ProblemValidationError(report.failures)


@cli.command()
@click.argument("path")
@out_option
@summary_option
@handle_errors
def series(path, out, summary):
    """Lower and upper central series."""
    problem, source = _load(path)
    g = problem.algebra
    lower = lower_central_series(g)
    upper = upper_central_series(g)
    k = lower.steps
    if upper.steps != k or not all(upper.terms[i].contains(lower.terms[k - i]) for i in range(k + 1)):
        raise InvariantViolation("lower and upper central series are not nested")
    _echo_summary(problem.name, {"steps": k, "lower_dims": lower.dims, "upper_dims": upper.dims})
    if summary:
        report = {"lower": lower.summary(), "upper": upper.summary()}
    else:
        report = {"lower": lower.model_dump(mode="json"), "upper": upper.model_dump(mode="json")}
    _write_report("series", source, problem, report, out)


def _structure_summary(problem: Problem, L: ComplexStructure) -> Dict[str, Any]:
    g = problem.algebra
    integrable = check_integrable(g, L)
    out: Dict[str, Any] = {
        "almost_complex": check_almost_complex(L),
        "integrable": integrable,
        "abelian": check_abelian(g, L),
    }
    if integrable:
        out["closed_holomorphic_differentials"] = closed_holomorphic_differential_dim(g, L).model_dump()
    return out


@cli.command("complex-check")
@click.argument("path")
@structure_option
@out_option
@handle_errors
def complex_check(path, label, out):
    """Integrability, abelianness and derived invariants of the selected structure(s)."""
    problem, source = _load(path)
    g = problem.algebra
    selected = problem.selected(label)
    if isinstance(selected, HypercomplexTriple):
        h = selected
        members = {m.label: m for m in h.members}
        report: Dict[str, Any] = {
            "quaternionic": check_quaternionic(h),
            "hypercomplex": check_hypercomplex(g, h),
            "abelian": check_abelian_hypercomplex(g, h),
            "parallel_forms": parallel_form_space_dim(g, h),
            "structures": {name: _structure_summary(problem, m) for name, m in members.items()},
            "upper_series_invariant": series_invariance(g, members),
        }
    else:
        report = _structure_summary(problem, selected)
        report["upper_series_invariant"] = series_invariance(g, {selected.label: selected})[selected.label]
    _echo_summary(problem.name, {k: v for k, v in report.items() if k != "structures"})
    _write_report("complex-check", source, problem, report, out)


@cli.command("albanese")
@click.argument("path")
@structure_option
@out_option
@summary_option
@handle_errors
def albanese_command(path, label, out, summary):
    """Albanese torus of a complex structure."""
    problem, source = _load(path)
    report = albanese(problem.algebra, problem.structure(label))
    _echo_summary(problem.name, report.summary())
    _write_report("albanese", source, problem, report.summary() if summary else report.model_dump(mode="json"), out)


@cli.command("h-albanese")
@click.argument("path")
@out_option
@summary_option
@handle_errors
def h_albanese_command(path, out, summary):
    """H-Albanese torus of the hypercomplex triple."""
    problem, source = _load(path)
    report = h_albanese(problem.algebra, problem.triple())
    _echo_summary(problem.name, report.summary())
    _write_report("h-albanese", source, problem, report.summary() if summary else report.model_dump(mode="json"), out)


@cli.command()
@click.argument("path")
@structure_option
@out_option
@summary_option
@handle_errors
def tower(path, label, out, summary):
    """Tower of principal torus bundles g -> g/z -> ... -> 0."""
    problem, source = _load(path)
    report = toric_tower(problem.algebra, problem.selected(label))
    _echo_summary(problem.name, report.summary() | {"structures_preserved": report.structures_preserved})
    _write_report("tower", source, problem, report.summary() if summary else report.model_dump(mode="json"), out)


def _csv_text(rows: List[List[str]]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


@cli.command("scan")
@click.argument("path")
@click.option("--grid", "grid_size", type=click.IntRange(min=1), default=3, show_default=True, help="Grid {(i/N, j/N)}, |i|, |j| <= N")
@click.option("--csv", "as_csv", is_flag=True, help="Also emit (u, v, a, b, c, kernel_dim, equal) rows")
@click.option("--subspace", default=None, help="Starting subspace as basis indices or names; default [g, g]")
@out_option
@summary_option
@handle_errors
def scan_command(path, grid_size, as_csv, subspace, out, summary):
    """Compare W_{Q,L} with W_{Q,H} over rational points of the twistor sphere."""
    problem, source = _load(path)
    report = scan(problem.algebra, problem.triple(), w=_parse_subspace(subspace, problem), grid=default_grid(grid_size))
    _echo_summary(problem.name, report.summary())
    _write_report("scan", source, problem, report.summary() if summary else report.model_dump(mode="json"), out)
    if as_csv:
        text = _csv_text(report.csv_rows())
        if out is None:
            click.echo(text, nl=False)
        else:
            Path(out).with_suffix(".csv").write_text(text)


@cli.command()
@click.argument("path")
@click.option("--point", required=True, help="Sphere point a,b,c with a^2 + b^2 + c^2 = 1")
@click.option("--subspace", default=None, help="Starting subspace as basis indices or names; default [g, g]")
@out_option
@handle_errors
def witness(path, point, subspace, out):
    """Certificate that W_{Q,L} is not H-invariant at an exceptional point."""
    problem, source = _load(path)
    cert = exceptional_witness(problem.algebra, problem.triple(), _parse_subspace(subspace, problem), _parse_point(point))
    _echo_summary(problem.name, {
        "point": str(cert.point),
        "closure_dim": cert.closure.dim,
        "operator": cert.operator,
        "vector": [x.to_json() for x in cert.vector],
    })
    _write_report("witness", source, problem, cert.model_dump(mode="json"), out)
