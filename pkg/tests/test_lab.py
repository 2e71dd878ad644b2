"""Lemma re-enactments, idempotent witnesses and the theorem harness"""

import pytest

from ringlab.ore.catalog import SWEEP, get_entry
from ringlab.ore.annihilators import idempotent_profile
from ringlab.ore.errors import BackendError, HypothesisError
from ringlab.ore.lab import (
    build_pq_baer_witness,
    converse_extraction,
    lemma_compat_f,
    lemma_rigid_equivalence,
    lemma_stability,
    ore_ann_idempotent_bounded,
    ore_idempotents_bounded,
    ore_pq_baer_bounded,
    theorem_roundtrip,
)
from ringlab.ore.models import VerdictKind
from ringlab.ore.rings import build_ring
from ringlab.ore.skew_poly import OreExtension


@pytest.mark.parametrize("fixture", ["tri4", "t2f2", "t2f2_inner", "zn4"])
def test_lemma_stability_holds(fixture, request, settings):
    ring, qd = request.getfixturevalue(fixture)
    verdict = lemma_stability(ring, qd, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS
    assert verdict.bounds["tuples"] > 0


def test_lemma_stability_only_uses_stable_idempotents(t2f2_inner, settings):
    ring, qd = t2f2_inner
    assert lemma_stability(ring, qd, settings=settings).bounds["stable_idempotents"] == 2


def test_lemmas_need_finite_rings(gauss, settings):
    ring, qd = gauss
    with pytest.raises(BackendError):
        lemma_stability(ring, qd, settings=settings)


def test_rigid_equivalence_sweep(settings):
    rings = [build_ring(get_entry(name).ring, settings) for name in SWEEP]
    verdict = lemma_rigid_equivalence(rings, settings)
    assert verdict.kind == VerdictKind.HOLDS
    assert verdict.bounds == {"rings": 4, "endomorphisms": 7}


def test_lemma_compat_f(tri4, settings):
    ring, qd = tri4
    verdict = lemma_compat_f(ring, qd, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS
    assert not verdict.vacuous
    assert verdict.bounds["zero_pairs"] > 0


def test_lemma_compat_f_vacuous_when_incompatible(z2poly, settings):
    ring, qd = z2poly
    verdict = lemma_compat_f(ring, qd, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS
    assert verdict.vacuous


def test_idempotent_witness(t2f2, settings):
    ring, qd = t2f2
    p = OreExtension(qd, settings).parse("{(1,0,0)}+{(0,1,0)} x")
    witness = build_pq_baer_witness(ring, qd, p, 2, seed=1, settings=settings)
    assert witness.coefficient_idempotents == ["(0,0,0)", "(1,0,0)"]
    assert witness.e == "(0,0,0)"
    assert witness.passed
    assert witness.cascade.kind == VerdictKind.HOLDS_BOUNDED
    assert witness.claim1_random.bounds["seed"] == 1


def test_witness_needs_pq_baer_coefficients(tri4, settings):
    ring, qd = tri4
    p = OreExtension(qd, settings).parse("{(2,0)}")
    with pytest.raises(HypothesisError) as exc:
        build_pq_baer_witness(ring, qd, p, 1, settings=settings)
    assert exc.value.hypothesis == "pq-baer-right"


def test_ore_pq_baer_on_triangular_matrices(t2f2, settings):
    ring, qd = t2f2
    verdict = ore_pq_baer_bounded(ring, qd, deg_p=1, deg_phi=1, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS_BOUNDED
    assert verdict.bounds == {"deg_p": 1, "deg_phi": 1, "polynomials": 64}


@pytest.mark.parametrize("entry,fixture,hypothesis", [
    ("z2poly_eval0", "z2poly", "c-sigma"),
    ("t2f2_inner", "t2f2_inner", "stable"),
    ("tri4_negate", "tri4", "pq-baer-right"),
])
def test_ore_pq_baer_refuses_without_hypotheses(entry, fixture, hypothesis, request, settings):
    ring, qd = request.getfixturevalue(fixture)
    with pytest.raises(HypothesisError) as exc:
        ore_pq_baer_bounded(ring, qd, hints=get_entry(entry).hints, samples=50, settings=settings)
    assert exc.value.hypothesis == hypothesis


def test_ore_pq_baer_on_infinite_ring_is_inconclusive(gauss, settings):
    ring, qd = gauss
    verdict = ore_pq_baer_bounded(ring, qd, samples=50, seed=9, settings=settings)
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert verdict.bounds["seed"] == 9


def test_converse_extraction(t2f2, settings):
    ring, qd = t2f2
    verdict = converse_extraction(ring, qd, 2, settings)
    assert verdict.kind == VerdictKind.HOLDS_BOUNDED
    assert verdict.bounds == {"deg_bound": 2, "agreed": 8, "without_generator": 0}


def test_converse_needs_finite_ring(gauss, settings):
    ring, qd = gauss
    with pytest.raises(BackendError):
        converse_extraction(ring, qd, 1, settings)


def test_ore_idempotents_of_eval0_extension(z2poly, settings):
    ring, qd = z2poly
    verdict = ore_idempotents_bounded(ring, qd, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS_BOUNDED
    assert verdict.bounds["degree"] == settings.ore_idempotent_degree


def test_ore_idempotents_of_triangular_matrices(t2f2, settings):
    ring, qd = t2f2
    verdict = ore_idempotents_bounded(ring, qd, degree=2, settings=settings)
    assert verdict.failed
    assert verdict.witness == {"e": "{(0,0,1)}"}


def test_roundtrip_through_proposition(t2f2, settings):
    ring, qd = t2f2
    report = theorem_roundtrip("t2f2_id", ring, qd, deg_phi=1, hints=get_entry("t2f2_id").hints,
                               settings=settings)
    assert report.branches == {"i": False, "ii": False, "iii": False, "proposition": True}
    assert report.forward.kind == VerdictKind.HOLDS_BOUNDED
    assert report.backward.kind == VerdictKind.HOLDS_BOUNDED
    assert not report.theorem_asserted
    assert any("proposition" in note for note in report.notes)


def test_roundtrip_non_instance(tri4, settings):
    ring, qd = tri4
    report = theorem_roundtrip("tri4_negate", ring, qd, deg_phi=1, hints=get_entry("tri4_negate").hints,
                               settings=settings)
    assert report.forward.vacuous
    assert report.rows["pq-baer-right"].failed
    assert not report.theorem_asserted
    assert any("non-instance" in note for note in report.notes)


def test_roundtrip_never_raises_on_infinite_rings(gauss, settings):
    ring, qd = gauss
    report = theorem_roundtrip("gauss_conj", ring, qd, samples=30, settings=settings)
    assert report.forward.kind == VerdictKind.INCONCLUSIVE
    assert report.backward.kind == VerdictKind.INCONCLUSIVE
    assert report.rows["sl-equals-b"].kind == VerdictKind.HOLDS


def test_every_linear_polynomial_has_a_degree_two_witness(t2f2, settings):
    ring, qd = t2f2
    verdict = ore_pq_baer_bounded(ring, qd, deg_p=1, deg_phi=2, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS_BOUNDED
    assert verdict.bounds == {"deg_p": 1, "deg_phi": 2, "polynomials": 64}

    left_semicentral = idempotent_profile(ring).left_semicentral
    for p in OreExtension(qd, settings).polys_up_to(1):
        witness = build_pq_baer_witness(ring, qd, p, 2, settings=settings)
        assert ring.parse(witness.e) in left_semicentral, witness.p
        assert witness.claim1.passed, witness.p
        assert witness.claim1_random.passed, witness.p
        assert witness.claim1_random.bounds["samples"] == 200
        assert witness.claim2.passed, witness.p
        assert witness.conclusion.passed, witness.p


def test_ore_annihilator_of_x_has_no_idempotent_generator(z2poly, settings):
    ring, qd = z2poly
    verdict = ore_ann_idempotent_bounded(ring, qd, "x", settings=settings)
    assert verdict.failed
    assert verdict.witness == {"p": "{1} x", "member": "{t}", "idempotents": "0, {1}"}
    assert verdict.bounds["deg_bound"] == 1


def test_ore_annihilator_generated_by_e11(t2f2, settings):
    ring, qd = t2f2
    verdict = ore_ann_idempotent_bounded(ring, qd, "{(0,0,1)}", degree=2, settings=settings)
    assert verdict.kind == VerdictKind.HOLDS_BOUNDED
    assert verdict.witness == {"p": "{(0,0,1)}", "e": "{(1,0,0)}"}
