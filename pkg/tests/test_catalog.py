"""Catalog entries and their expected verdicts"""

import pytest

from ringlab.ore.catalog import (
    CATALOG,
    SWEEP,
    EntryRunner,
    component_context,
    expectation_met,
    get_entry,
    load_catalog,
    run_entry,
    run_sweep,
)
from ringlab.ore.errors import BackendError
from ringlab.ore.models import Expectation, Verdict, VerdictKind


def test_catalog_names_are_unique():
    names = [entry.name for entry in load_catalog()]
    assert len(names) == len(set(names))
    assert set(SWEEP) <= set(names)
    assert all(entry.expectations for entry in CATALOG)


def test_unknown_entry():
    with pytest.raises(KeyError, match="tri4_negate"):
        get_entry("no_such_ring")


@pytest.mark.parametrize("name", ["zn2", "zn3", "zn4", "zn2_zn2", "z2poly_eval0"])
def test_entry_meets_expectations(name, settings):
    report = run_entry(get_entry(name), samples=300, settings=settings)
    assert report.mismatches == [], [r.actual.label() for r in report.mismatches]


def test_sampled_entries_at_default_budget(settings):
    assert settings.sample_pairs == 2000
    for name in ("int_rat_tri_halve", "gauss_conj"):
        report = run_entry(get_entry(name), settings=settings)
        assert report.mismatches == [], [r.actual.label() for r in report.mismatches]
        sampled = [r.actual for r in report.results if r.actual.bounds.get("samples")]
        assert sampled
        assert all(v.bounds["samples"] == 2000 for v in sampled)


def test_tri4_expectations_without_roundtrip(settings):
    report = run_entry(get_entry("tri4_negate"), roundtrip=False, settings=settings)
    assert report.roundtrip is None
    assert report.mismatches == []


def test_gauss_roundtrip_is_attached(settings):
    report = run_entry(get_entry("gauss_conj"), settings=settings)
    assert report.mismatches == []
    assert report.roundtrip is not None
    assert report.roundtrip.entry == "gauss_conj"


def test_sweep(settings):
    report = run_sweep(settings)
    assert report.name == "sweep"
    assert [r.met for r in report.results] == [True]


def test_component_context(tsum, settings):
    ring, qd = tsum
    entry = get_entry("tsum_square")
    left, left_qd = component_context(entry, ring, qd, "left", settings)
    assert left.size == 8
    assert left_qd.is_trivial
    right, right_qd = component_context(entry, ring, qd, "right", settings)
    assert right.format(right_qd.sigma(right.parse("1+y"))) == "1+y^2"
    with pytest.raises(BackendError):
        component_context(entry, ring, qd, "middle", settings)


def test_runner_caches_verdicts(settings):
    runner = EntryRunner(get_entry("zn4"), settings=settings)
    first = runner.evaluate("reduced")
    assert runner.evaluate("reduced") is first


def test_runner_reports_missing_hypothesis(settings):
    runner = EntryRunner(get_entry("z2poly_eval0"), samples=100, settings=settings)
    verdict = runner.evaluate("ore-pq-baer")
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert verdict.witness == {"hypothesis": "c-sigma"}


def _expectation(kind, witness=None):
    return Expectation(property="reduced", expected=kind, anchor="test", witness=witness)


def test_expectation_kind_must_match():
    actual = Verdict(property="reduced", kind=VerdictKind.HOLDS)
    assert expectation_met(_expectation(VerdictKind.HOLDS), actual)
    assert not expectation_met(_expectation(VerdictKind.HOLDS_BOUNDED), actual)


def test_expectation_witness_is_a_subset():
    actual = Verdict(property="compatible", kind=VerdictKind.FAILS,
                     witness={"f": "1+t", "g": "t", "part": "sigma-compatible"})
    assert expectation_met(_expectation(VerdictKind.FAILS, {"part": "sigma-compatible"}), actual)
    assert not expectation_met(_expectation(VerdictKind.FAILS, {"part": "delta-compatible"}), actual)
    assert not expectation_met(_expectation(VerdictKind.FAILS, {"a": "t"}),
                               Verdict(property="reduced", kind=VerdictKind.FAILS))
