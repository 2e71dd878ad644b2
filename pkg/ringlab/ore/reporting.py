"""Report rendering - rich tables for people, sorted JSON for machines"""

import io
import json

from rich.console import Console
from rich.table import Table
from rich.text import Text

from .models import EntryReport, HypothesisReport, PqBaerWitness, Report, Verdict, VerdictKind

STYLES = {
    VerdictKind.HOLDS: "green",
    VerdictKind.HOLDS_BOUNDED: "green",
    VerdictKind.FAILS: "red",
    VerdictKind.INCONCLUSIVE: "yellow",
}


def render_machine(report: Report) -> str:
    """Byte-stable JSON: identical inputs and seeds give identical output"""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2)


def parse_machine(text: str) -> Report:
    return Report.model_validate_json(text)


def _cell(verdict: Verdict) -> Text:
    return Text(verdict.label(), style=STYLES[verdict.kind])


def _verdict_table(title: str, verdicts) -> Table:
    table = Table(title=Text(title), show_lines=False)
    table.add_column("Property", style="bold")
    table.add_column("Verdict")
    table.add_column("Bounds")
    for v in verdicts:
        bounds = ", ".join(f"{k}={n}" for k, n in v.bounds.items())
        table.add_row(Text(v.property), _cell(v), Text(bounds))
    return table


def _entry_table(entry: EntryReport) -> Table:
    table = Table(title=Text(f"Entry: {entry.name}"))
    table.add_column("Property", style="bold")
    table.add_column("Expected")
    table.add_column("Actual")
    table.add_column("Met")
    table.add_column("Anchor")
    for r in entry.results:
        prop = r.expectation.property
        if r.expectation.component:
            prop = f"{prop} ({r.expectation.component})"
        met = Text("yes", style="green") if r.met else Text("NO", style="red")
        table.add_row(Text(prop), Text(r.expectation.expected.value), _cell(r.actual), met,
                      Text(r.expectation.anchor))
    return table


def _roundtrip_table(rt: HypothesisReport) -> Table:
    table = _verdict_table(f"Theorem roundtrip: {rt.entry}", list(rt.rows.values()) + [rt.forward, rt.backward])
    branches = ", ".join(k for k, v in rt.branches.items() if v) or "none"
    table.caption = Text(f"branches: {branches}; theorem asserted: {'yes' if rt.theorem_asserted else 'no'}")
    return table


def _witness_table(w: PqBaerWitness) -> Table:
    table = _verdict_table(f"Idempotent witness for p = {w.p}",
                           [v for v in (w.claim1, w.claim1_random, w.claim2, w.conclusion, w.cascade) if v])
    table.caption = Text(f"e = {w.e} from coefficient idempotents {', '.join(w.coefficient_idempotents)}")
    return table


def render_text(report: Report, width: int = 140) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=width, color_system=None, force_terminal=False)
    console.print(f"{report.command}: {report.subject}", markup=False)
    for line in report.lines:
        console.print(line, markup=False)
    if report.verdicts:
        console.print(_verdict_table("Properties", report.verdicts))
    if report.profile:
        profile = Table(title="Idempotent profile")
        profile.add_column("Set", style="bold")
        profile.add_column("Members")
        for name, members in report.profile.items():
            profile.add_row(Text(name), Text("{" + ", ".join(members) + "}"))
        console.print(profile)
    if report.witness:
        console.print(_witness_table(report.witness))
    for entry in report.entries:
        console.print(_entry_table(entry))
        if entry.roundtrip:
            console.print(_roundtrip_table(entry.roundtrip))
            for note in entry.roundtrip.notes:
                console.print(f"  note: {note}", markup=False)
    return buffer.getvalue()


def render(report: Report, fmt: str) -> str:
    return render_machine(report) if fmt == "machine" else render_text(report)
