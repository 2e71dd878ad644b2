"""Command-line surface: outputs and exit codes"""

import json

import pytest
from click.testing import CliRunner

from ringlab import __version__
from ringlab.ore import orchestrator
from ringlab.ore.catalog import get_entry
from ringlab.ore.cli import EXIT_FAILS, EXIT_HOLDS, EXIT_INCONCLUSIVE, EXIT_USAGE, cli
from ringlab.ore.models import CatalogEntry, Expectation, RingSpec, VerdictKind
from ringlab.ore.reporting import parse_machine, render_machine

Z3_ADD = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def invoke(runner, *args):
    return runner.invoke(cli, ["--log-level", "WARNING", *args])


def ring_file(tmp_path, payload):
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(payload))
    return str(path)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_check_fails_with_replayed_witness(runner):
    result = invoke(runner, "check", "c-sigma", "--name", "z2poly_eval0")
    assert result.exit_code == EXIT_FAILS
    assert "f=1+t, g=t" in result.stdout
    assert "witness replayed: yes" in result.stdout


def test_check_holds(runner):
    result = invoke(runner, "check", "compatible", "--name", "tri4_negate")
    assert result.exit_code == EXIT_HOLDS


def test_check_sampled_is_inconclusive(runner):
    result = invoke(runner, "check", "rigid", "--name", "gauss_conj", "--samples", "50")
    assert result.exit_code == EXIT_INCONCLUSIVE


def test_check_component_part(runner):
    result = invoke(runner, "check", "delta-compatible", "--name", "t2f2_inner", "--format", "machine")
    assert result.exit_code == EXIT_FAILS
    report = parse_machine(result.stdout)
    assert report.verdicts[0].property == "delta-compatible"


@pytest.mark.parametrize("args", [
    ["check", "noetherian", "--name", "tri4_negate"],
    ["check", "reduced"],
    ["check", "reduced", "--name", "no_such_ring"],
    ["fmap", "--name", "gauss_conj", "--i", "2", "--j", "1", "--elem", "i"],
])
def test_usage_errors(runner, args):
    assert invoke(runner, *args).exit_code == EXIT_USAGE


def test_name_and_file_are_exclusive(runner, tmp_path):
    path = ring_file(tmp_path, {"ring": {"kind": "zn", "n": 3}})
    result = invoke(runner, "report", "--name", "zn3", "--file", path)
    assert result.exit_code == EXIT_USAGE


def test_ring_file_report(runner, tmp_path):
    path = ring_file(tmp_path, {"ring": {"kind": "tables", "add": Z3_ADD, "mul": [[0, 0, 0], [0, 1, 2], [0, 2, 1]]}})
    result = invoke(runner, "report", "--file", path, "--format", "machine")
    assert result.exit_code == EXIT_HOLDS
    report = parse_machine(result.stdout)
    assert {v.property: v.kind for v in report.verdicts}["reduced"] == VerdictKind.HOLDS
    assert report.profile["central"] == ["#0", "#1"]


def test_invalid_ring_file(runner, tmp_path):
    path = ring_file(tmp_path, {"ring": {"kind": "tables", "add": Z3_ADD, "mul": [[0, 0, 0], [0, 1, 2], [0, 2, 2]]}})
    result = invoke(runner, "report", "--file", path)
    assert result.exit_code == EXIT_USAGE
    assert "left-distributivity" in result.stderr


def test_malformed_ring_file(runner, tmp_path):
    path = ring_file(tmp_path, {"ring": {"kind": "zn", "n": 3}, "colour": "blue"})
    assert invoke(runner, "report", "--file", path).exit_code == EXIT_USAGE


def test_report_text(runner):
    result = invoke(runner, "report", "--name", "tri4_negate")
    assert result.exit_code == EXIT_HOLDS
    assert "annihilator={(0,0), (0,2), (2,0), (2,2)}" in result.stdout
    assert "Idempotent profile" in result.stdout


def test_machine_report_round_trips_and_is_deterministic(runner):
    args = ["report", "--name", "gauss_conj", "--samples", "50", "--seed", "42", "--format", "machine"]
    first, second = invoke(runner, *args), invoke(runner, *args)
    assert first.stdout == second.stdout
    report = parse_machine(first.stdout)
    assert render_machine(report) == first.stdout.rstrip("\n")
    sampled = [v for v in report.verdicts if v.kind == VerdictKind.INCONCLUSIVE and "samples" in v.bounds]
    assert sampled
    assert all(v.bounds["seed"] == 42 for v in sampled)


def test_mul(runner):
    result = invoke(runner, "mul", "--name", "z2poly_eval0", "--p", "x", "--q", "{t}")
    assert result.exit_code == EXIT_HOLDS
    assert result.stdout.splitlines()[1] == "0"
    result = invoke(runner, "mul", "--name", "t2f2_inner", "--p", "x", "--q", "{(0,0,1)}")
    assert result.stdout.splitlines()[1] == "{(0,1,0)}+{(0,0,1)} x"


def test_ann_without_generator(runner):
    result = invoke(runner, "ann", "--name", "tri4_negate", "--elem", "(2,0)", "--principal")
    assert result.exit_code == EXIT_HOLDS
    assert "annihilator (4 elements): {(0,0), (0,2), (2,0), (2,2)}" in result.stdout
    assert "generator: NONE" in result.stdout


def test_ann_with_generator(runner):
    result = invoke(runner, "ann", "--name", "t2f2_id", "--elem", "(0,1,0)")
    assert "generator: (1,0,0)" in result.stdout


def test_fmap(runner):
    result = invoke(runner, "fmap", "--name", "gauss_conj", "--i", "1", "--j", "1", "--elem", "i")
    assert "f_1^1(i) = -i" in result.stdout
    result = invoke(runner, "fmap", "--name", "gauss_conj", "--i", "0", "--j", "1", "--elem", "i")
    assert "f_0^1(i) = 2 i" in result.stdout


def test_witness_passes(runner):
    result = invoke(runner, "witness", "--name", "t2f2_id", "--p", "{(1,0,0)}+{(0,1,0)} x",
                    "--deg-phi", "1", "--format", "machine")
    assert result.exit_code == EXIT_HOLDS
    report = parse_machine(result.stdout)
    assert report.witness.e == "(0,0,0)"
    assert report.witness.coefficient_idempotents == ["(0,0,0)", "(1,0,0)"]


def test_witness_without_hypotheses(runner):
    result = invoke(runner, "witness", "--name", "tri4_negate", "--p", "{(2,0)}")
    assert result.exit_code == EXIT_INCONCLUSIVE
    assert "inconclusive:" in result.stdout


def test_paper_is_a_command(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    assert "paper" in cli.commands
    assert "Regression over every catalog entry" in result.stdout


def test_catalog_run_on_a_subset(runner, monkeypatch):
    monkeypatch.setattr(orchestrator, "load_catalog", lambda: [get_entry("zn4"), get_entry("zn2")])
    result = invoke(runner, "paper", "--format", "machine")
    assert result.exit_code == EXIT_HOLDS
    report = parse_machine(result.stdout)
    assert [e.name for e in report.entries] == ["zn4", "zn2", "sweep"]
    assert report.lines[0].startswith("2 catalog entries")


def test_catalog_run_reports_mismatch(runner, monkeypatch):
    wrong = CatalogEntry(
        name="zn4_wrong", ring=RingSpec.zn(4), roundtrip=False,
        expectations=[Expectation(property="reduced", expected=VerdictKind.HOLDS, anchor="deliberately wrong")],
    )
    monkeypatch.setattr(orchestrator, "load_catalog", lambda: [wrong])
    result = invoke(runner, "paper")
    assert result.exit_code == EXIT_FAILS
    assert "1 mismatches" in result.stdout
