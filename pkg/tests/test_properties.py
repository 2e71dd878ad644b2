"""Property checkers and witness replay"""

import pytest

from ringlab.ore.catalog import TRI4_SQUARE_ZERO, get_entry
from ringlab.ore.models import VerdictKind
from ringlab.ore.properties import (
    VOCABULARY,
    PropertyScanner,
    is_reduced,
    is_skew_armendariz,
    parse_members,
    replay_witness,
)


def scanner_for(entry_name, built, settings, **kwargs):
    ring, qd = built
    return PropertyScanner(ring, qd, hints=get_entry(entry_name).hints, settings=settings, **kwargs)


@pytest.fixture
def tri4_scanner(tri4, settings):
    return scanner_for("tri4_negate", tri4, settings)


def test_tri4_holds(tri4_scanner):
    for prop in ("compatible", "c-sigma", "stable"):
        assert tri4_scanner.check(prop).kind == VerdictKind.HOLDS, prop
    abelian = tri4_scanner.check("abelian")
    assert abelian.kind == VerdictKind.HOLDS
    assert abelian.bounds == {"idempotents": 2}


def test_tri4_nilpotent_witnesses(tri4_scanner):
    assert tri4_scanner.check("reduced").witness == {"a": "(0,1)"}
    assert tri4_scanner.check("rigid").witness == {"a": "(0,1)"}


def test_tri4_not_pq_baer(tri4_scanner):
    verdict = tri4_scanner.check("pq-baer-right")
    assert verdict.failed
    assert verdict.witness == {"a": "(2,0)", "annihilator": "{(0,0), (0,2), (2,0), (2,2)}"}
    assert verdict.label() == "FAILS (a=(2,0), annihilator={(0,0), (0,2), (2,0), (2,2)})"


def test_tri4_not_skew_armendariz(tri4_scanner):
    verdict = tri4_scanner.check("skew-armendariz")
    assert verdict.witness == {
        "p": TRI4_SQUARE_ZERO, "q": TRI4_SQUARE_ZERO, "i": "1", "j": "0", "product": "{(0,2)} x",
    }


def test_t2f2_profile_properties(t2f2, settings):
    scanner = scanner_for("t2f2_id", t2f2, settings)
    assert scanner.check("pq-baer-right").kind == VerdictKind.HOLDS
    assert scanner.check("pq-baer-left").kind == VerdictKind.HOLDS
    assert scanner.check("reduced").witness == {"a": "(0,1,0)"}
    abelian = scanner.check("abelian")
    assert abelian.failed
    assert abelian.witness["e"] == "(0,0,1)"
    assert scanner.check("c-sigma").notes == ["tautology for identity sigma"]


def test_t2f2_inner_is_not_stable(t2f2_inner, settings):
    scanner = scanner_for("t2f2_inner", t2f2_inner, settings)
    verdict = scanner.check("stable")
    assert verdict.witness == {"e": "(1,0,0)", "x": "(1,0,0)", "map": "delta"}
    compatible = scanner.check_compatible_parts()
    assert compatible["sigma-compatible"].kind == VerdictKind.HOLDS
    assert compatible["delta-compatible"].failed
    assert compatible["compatible"].witness["part"] == "delta-compatible"


def test_t2f2_inner_armendariz_product(t2f2_inner, settings):
    verdict = scanner_for("t2f2_inner", t2f2_inner, settings).check("skew-armendariz")
    assert verdict.witness["product"] == "{(0,1,0)} x"
    assert (verdict.witness["i"], verdict.witness["j"]) == ("1", "0")


def test_z2poly_c_sigma_fails(z2poly, settings):
    scanner = scanner_for("z2poly_eval0", z2poly, settings)
    assert scanner.check("c-sigma").witness == {"f": "1+t", "g": "t"}
    compatible = scanner.check("compatible")
    assert compatible.witness == {"f": "1+t", "g": "t", "part": "sigma-compatible"}
    assert scanner.check("rigid").witness == {"a": "t"}


def test_sampled_verdicts_carry_their_bounds(gauss, settings):
    scanner = scanner_for("gauss_conj", gauss, settings, seed=5, samples=40)
    verdict = scanner.check("rigid")
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert verdict.bounds["seed"] == 5
    assert verdict.bounds["samples"] == 40
    assert verdict.bounds["refutations"] == 0
    again = scanner_for("gauss_conj", gauss, settings, seed=5, samples=40).check("rigid")
    assert again == verdict


def test_infinite_rings_get_closed_form_answers(gauss, settings):
    scanner = scanner_for("gauss_conj", gauss, settings, samples=20)
    assert scanner.check("abelian").kind == VerdictKind.HOLDS
    assert scanner.check("stable").kind == VerdictKind.HOLDS
    assert scanner.check("semiprime").kind == VerdictKind.INCONCLUSIVE
    assert scanner.check("pq-baer-right").kind == VerdictKind.INCONCLUSIVE


def test_int_rat_tri_probes(int_rat_tri, settings):
    scanner = scanner_for("int_rat_tri_halve", int_rat_tri, settings, samples=50)
    assert scanner.check("reduced").witness == {"a": "(0,1)"}
    assert scanner.check("rigid").witness == {"a": "(0,1)"}


def test_direct_sum_witness(tsum, settings):
    scanner = scanner_for("tsum_square", tsum, settings)
    assert scanner.check("reduced").witness == {"a": "<(0,1,0)|0>"}


def test_small_commutative_rings_are_armendariz(zn4, settings):
    ring, qd = zn4
    verdict = is_skew_armendariz(ring, qd, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS_BOUNDED
    assert verdict.bounds["deg_bound"] == 2


def test_module_level_entry_points(zn4, settings):
    ring, _ = zn4
    assert is_reduced(ring, settings=settings).witness == {"a": "2"}


def test_check_all_covers_vocabulary(zn4, settings):
    ring, qd = zn4
    verdicts = PropertyScanner(ring, qd, settings=settings).check_all()
    assert [v.property for v in verdicts] == list(VOCABULARY)


def test_unknown_property(zn4, settings):
    ring, qd = zn4
    with pytest.raises(ValueError):
        PropertyScanner(ring, qd, settings=settings).check("noetherian")


@pytest.mark.parametrize("entry,fixture", [
    ("tri4_negate", "tri4"),
    ("t2f2_id", "t2f2"),
    ("t2f2_inner", "t2f2_inner"),
    ("z2poly_eval0", "z2poly"),
    ("tsum_square", "tsum"),
])
def test_every_failure_replays(entry, fixture, request, settings):
    ring, qd = built = request.getfixturevalue(fixture)
    scanner = scanner_for(entry, built, settings, samples=100)
    failures = [v for v in scanner.check_all() if v.failed]
    assert failures
    for verdict in failures:
        assert replay_witness(ring, qd, verdict), verdict.label()


def test_tampered_witness_does_not_replay(tri4_scanner, tri4):
    ring, qd = tri4
    verdict = tri4_scanner.check("reduced")
    tampered = verdict.model_copy(update={"witness": {"a": "(1,0)"}})
    assert not replay_witness(ring, qd, tampered)
    assert not replay_witness(ring, qd, tri4_scanner.check("stable"))


def test_parse_members(tri4):
    ring, _ = tri4
    assert parse_members(ring, "{(0,0), (2,2)}") == [ring.zero, ring.parse("(2,2)")]
    assert parse_members(ring, "{}") == []


def test_abelian_without_a_separating_element(tsum, settings, monkeypatch):
    ring, _ = tsum
    scanner = scanner_for("tsum_square", tsum, settings, samples=20)
    monkeypatch.setattr(scanner, "_elements", lambda prop: [ring.zero, ring.one])
    verdict = scanner.check("abelian")
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert "e" in verdict.witness
    assert verdict.bounds["refutations"] == 0


def test_int_rat_tri_is_skew_armendariz_on_samples(int_rat_tri, settings):
    scanner = scanner_for("int_rat_tri_halve", int_rat_tri, settings)
    verdict = scanner.check("skew-armendariz")
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert verdict.bounds["samples"] == settings.sample_pairs
    assert verdict.bounds["deg_bound"] == 1
