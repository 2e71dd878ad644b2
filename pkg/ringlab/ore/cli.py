"""ringlab - command-line workbench for Ore extensions R[x; sigma, delta]

Usage:
    ringlab report --name tri4_negate
    ringlab check c-sigma --name z2poly_eval0
    ringlab mul --name z2poly_eval0 --p "x" --q "{t}"
    ringlab ann --name tri4_negate --elem "(2,0)" --principal
    ringlab fmap --name gauss_conj --i 1 --j 3 --elem "1/2+1 i"
    ringlab witness --name t2f2_id --p "{(1,0,0)}+{(0,1,0)} x"
    ringlab paper

Exit codes: 0 holds, 1 fails or mismatch, 2 usage or validation error, 3 inconclusive.
"""

import functools
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import click
import structlog
from pydantic import ValidationError as SchemaError

from .. import __version__
from .annihilators import (
    generated_by_idempotent,
    idempotent_profile,
    left_ann,
    left_ann_principal,
    profile_labels,
    right_ann,
    right_ann_principal,
)
from .catalog import build_entry, get_entry
from .config import Settings, get_settings
from .errors import BackendError, HypothesisError, RingLabError
from .lab.proposition import build_pq_baer_witness, check_hypotheses
from .logs import configure_logging
from .maps import QuasiDerivation, build_quasi_derivation
from .models import Report, RingFile, Verdict, VerdictKind
from .orchestrator import CatalogOrchestrator
from .properties import VOCABULARY, PropertyScanner, format_members, replay_witness
from .reporting import render
from .rings import Ring, build_ring
from .skew_poly import OreExtension

logger = structlog.get_logger(__name__)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

CHECKABLE = VOCABULARY + ("sigma-compatible", "delta-compatible")


def exit_code_for(verdict: Verdict) -> int:
    if verdict.kind in (VerdictKind.HOLDS, VerdictKind.HOLDS_BOUNDED):
        return EXIT_HOLDS
    if verdict.kind == VerdictKind.FAILS:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


class Invocation:
    """Parsed global flags plus the ring they select"""

    def __init__(self, name: Optional[str], file: Optional[str], fmt: str, seed: Optional[int],
                 samples: Optional[int], deg_bound: Optional[int], deg_p: int, deg_phi: int,
                 scan_cap: Optional[int]):
        if bool(name) == bool(file):
            raise click.UsageError("pass exactly one of --name or --file")
        self.name = name
        self.file = file
        self.fmt = fmt
        self.seed = seed
        self.samples = samples
        self.deg_bound = deg_bound
        self.deg_p = deg_p
        self.deg_phi = deg_phi
        updates = {"scan_cap": scan_cap} if scan_cap is not None else {}
        self.settings: Settings = get_settings().model_copy(update=updates)
        self.hints: Dict[str, List[str]] = {}
        self.ring, self.qd = self._load()

    def _load(self) -> Tuple[Ring, QuasiDerivation]:
        if self.name:
            try:
                entry = get_entry(self.name)
            except KeyError as e:
                raise click.UsageError(str(e.args[0]))
            self.hints = dict(entry.hints)
            return build_entry(entry, self.settings)
        ring_file = RingFile.model_validate_json(Path(self.file).read_text())
        ring = build_ring(ring_file.ring, self.settings)
        return ring, build_quasi_derivation(ring, ring_file.sigma, ring_file.delta, self.settings)

    @property
    def subject(self) -> str:
        label = self.name or self.file
        return f"{label} = {self.ring.name} with {self.qd.name}"

    def scanner(self) -> PropertyScanner:
        return PropertyScanner(self.ring, self.qd, seed=self.seed, samples=self.samples, hints=self.hints,
                               deg_bound=self.deg_bound, settings=self.settings)


SUBJECT_OPTIONS = [
    click.option("--name", "name", default=None, help="Catalog entry name"),
    click.option("--file", "file", default=None, type=click.Path(exists=True, dir_okay=False),
                 help="Ring-definition file (JSON with ring, sigma, delta)"),
    click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text", show_default=True),
    click.option("--seed", type=int, default=None, help="Sampling seed"),
    click.option("--samples", type=int, default=None, help="Sampled pairs for infinite rings"),
    click.option("--deg-bound", type=int, default=None, help="Degree bound for skew-Armendariz scans"),
    click.option("--deg-p", type=int, default=1, show_default=True),
    click.option("--deg-phi", type=int, default=2, show_default=True),
    click.option("--scan-cap", type=int, default=None, help="Cap on exhaustive tuple scans"),
]


def subject_options(fn):
    for option in reversed(SUBJECT_OPTIONS):
        fn = option(fn)
    return fn


def handles_errors(fn):
    """Library errors become exit code 2 with a diagnostic on standard error"""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (RingLabError, SchemaError) as e:
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_USAGE)

    return wrapper


def emit(report: Report, fmt: str) -> None:
    text = render(report, fmt)
    click.echo(text, nl=not text.endswith("\n"))
    if report.exit_code:
        raise click.exceptions.Exit(report.exit_code)


@click.group()
@click.version_option(version=__version__, prog_name="ringlab")
@click.option("--log-level", default="", help="Override RINGLAB_LOG_LEVEL")
def cli(log_level: str) -> None:
    """ringlab - decide ring properties and re-enact Ore extension theorems

    \b
    Commands:
      report   Full property report and idempotent profile
      check    One property; exit code carries the verdict
      mul      Product of two skew polynomials
      ann      Annihilator of an element and its idempotent generator
      fmap     The word sum f_i^j applied to an element
      witness  Idempotent witness for r(p(x)S) = eS at bounded degree
      paper    Regression over every catalog entry
    """
    configure_logging(log_level)


@cli.command()
@subject_options
@handles_errors
def report(fmt: str, **flags) -> None:
    """Every property checker plus the idempotent profile"""
    run = Invocation(fmt=fmt, **flags)
    verdicts = run.scanner().check_all()
    lines = []
    profile = None
    try:
        profile = profile_labels(run.ring, idempotent_profile(run.ring))
    except BackendError as e:
        lines.append(f"idempotent profile unavailable: {e}")
    emit(Report(command="report", subject=run.subject, verdicts=verdicts, profile=profile, lines=lines), fmt)


@cli.command()
@click.argument("prop", metavar="PROPERTY", type=click.Choice(CHECKABLE))
@subject_options
@handles_errors
def check(prop: str, fmt: str, **flags) -> None:
    """Check one property; a Fails witness is replayed before printing"""
    run = Invocation(fmt=fmt, **flags)
    verdict = run.scanner().check(prop)
    lines = []
    if verdict.failed:
        replayed = replay_witness(run.ring, run.qd, verdict)
        if not replayed:
            logger.error(f"Witness for {prop} did not replay: {verdict.label()}")
        lines.append(f"witness replayed: {'yes' if replayed else 'NO'}")
    emit(Report(command="check", subject=run.subject, verdicts=[verdict], lines=lines,
                exit_code=exit_code_for(verdict)), fmt)


@cli.command()
@click.option("--p", "p_text", required=True, help="Left factor, e.g. \"{(2,0)}+{(2,1)} x\"")
@click.option("--q", "q_text", required=True, help="Right factor")
@subject_options
@handles_errors
def mul(p_text: str, q_text: str, fmt: str, **flags) -> None:
    """Canonical product in R[x; sigma, delta]"""
    run = Invocation(fmt=fmt, **flags)
    ext = OreExtension(run.qd, run.settings)
    product = ext.parse(p_text) * ext.parse(q_text)
    emit(Report(command="mul", subject=run.subject, lines=[ext.format(product)]), fmt)


@cli.command()
@click.option("--elem", required=True, help="Element literal")
@click.option("--side", type=click.Choice(["right", "left"]), default="right", show_default=True)
@click.option("--principal", is_flag=True, help="Annihilate the principal ideal aR (or Ra) instead of {a}")
@subject_options
@handles_errors
def ann(elem: str, side: str, principal: bool, fmt: str, **flags) -> None:
    """Annihilator set and its idempotent generator, or NONE"""
    run = Invocation(fmt=fmt, **flags)
    ring = run.ring
    a = ring.parse(elem)
    if principal:
        ann_set = right_ann_principal(ring, a) if side == "right" else left_ann_principal(ring, a)
    else:
        ann_set = right_ann(ring, [a]) if side == "right" else left_ann(ring, [a])
    generator = generated_by_idempotent(ring, ann_set)
    lines = [
        f"annihilator ({len(ann_set)} elements): {format_members(ring, ann_set.members)}",
        f"generator: {ring.format(generator) if generator is not None else 'NONE'}",
    ]
    emit(Report(command="ann", subject=run.subject, lines=lines), fmt)


@cli.command()
@click.option("--i", "i", type=int, required=True)
@click.option("--j", "j", type=int, required=True)
@click.option("--elem", required=True, help="Element literal")
@subject_options
@handles_errors
def fmap(i: int, j: int, elem: str, fmt: str, **flags) -> None:
    """f_i^j(r): the sum of words with i sigmas and j-i deltas"""
    run = Invocation(fmt=fmt, **flags)
    ring = run.ring
    r = ring.parse(elem)
    try:
        value = run.qd.f_map(i, j, r)
    except IndexError as e:
        raise click.UsageError(str(e))
    emit(Report(command="fmap", subject=run.subject, lines=[f"f_{i}^{j}({elem}) = {ring.format(value)}"]), fmt)


@cli.command()
@click.option("--p", "p_text", required=True, help="Polynomial whose annihilator is witnessed")
@subject_options
@handles_errors
def witness(p_text: str, fmt: str, **flags) -> None:
    """e = e_n ... e_0 for p(x), with both claims checked at degree --deg-phi"""
    run = Invocation(fmt=fmt, **flags)
    ext = OreExtension(run.qd, run.settings)
    p = ext.parse(p_text)
    try:
        check_hypotheses(run.scanner())
        built = build_pq_baer_witness(run.ring, run.qd, p, run.deg_phi, run.seed, run.settings)
    except HypothesisError as e:
        emit(Report(command="witness", subject=run.subject, lines=[f"inconclusive: {e}"],
                    exit_code=EXIT_INCONCLUSIVE), fmt)
        return
    emit(Report(command="witness", subject=run.subject, witness=built,
                exit_code=EXIT_HOLDS if built.passed else EXIT_FAILS), fmt)


@cli.command("paper")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text", show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--deg-p", type=int, default=1, show_default=True)
@click.option("--deg-phi", type=int, default=2, show_default=True)
@click.option("--scan-cap", type=int, default=None)
@handles_errors
def run_catalog(fmt: str, seed: Optional[int], samples: Optional[int], deg_p: int, deg_phi: int,
                scan_cap: Optional[int]) -> None:
    """Run every catalog entry against its expected verdicts"""
    settings = get_settings()
    if scan_cap is not None:
        settings = settings.model_copy(update={"scan_cap": scan_cap})
    orchestrator = CatalogOrchestrator(settings, seed=seed, samples=samples, deg_p=deg_p, deg_phi=deg_phi)
    entries = orchestrator.run_sync()
    total = sum(len(e.results) for e in entries)
    mismatched = sum(len(e.mismatches) for e in entries)
    catalog_entries = sum(1 for e in entries if e.name != "sweep")
    lines = [f"{catalog_entries} catalog entries, {total} expectations, {mismatched} mismatches"]
    emit(Report(command="paper", subject="catalog", entries=entries, lines=lines,
                exit_code=EXIT_FAILS if mismatched else EXIT_HOLDS), fmt)


def main() -> None:
    cli()
