"""Ring construction, literals and axiom validation"""

from fractions import Fraction

import pytest

from ringlab.ore.config import Settings
from ringlab.ore.errors import BackendError, LiteralError, SizeError, ValidationError
from ringlab.ore.models import BackendKind, RingSpec
from ringlab.ore.rings import build_ring, elements, sample, scan_set, small_rationals, split_top

Z3_ADD = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_zn_elements_start_at_zero(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    assert ring.kind == BackendKind.ENUMERABLE
    assert elements(ring) == [0, 1, 2, 3]
    assert ring.one == 1
    assert ring.mul(2, 3) == 2


def test_tri2_literals_and_size(tri4):
    ring, _ = tri4
    assert ring.size == 16
    a = ring.parse("(2,1)")
    assert ring.format(a) == "(2,1)"
    assert ring.format(ring.elements()[1]) == "(0,1)"
    # (2,1)^2 = (4, 2+2) = 0 over Z4
    assert ring.mul(a, a) == ring.zero


def test_ut2_multiplication(t2f2):
    ring, _ = t2f2
    e11, e12, e22 = ring.parse("(1,0,0)"), ring.parse("(0,1,0)"), ring.parse("(0,0,1)")
    assert ring.mul(e11, e12) == e12
    assert ring.mul(e12, e22) == e12
    assert ring.mul(e22, e12) == ring.zero
    assert ring.format(ring.one) == "(1,0,1)"


def test_direct_sum_literal(settings):
    ring = build_ring(RingSpec.sum(RingSpec.zn(2), RingSpec.zn(3)), settings)
    assert ring.size == 6
    x = ring.parse("<1|2>")
    assert ring.format(ring.mul(x, x)) == "<1|1>"


def test_polynomial_literals(z2poly):
    ring, _ = z2poly
    assert ring.kind == BackendKind.SAMPLEABLE
    f = ring.parse("1+t^2")
    assert f == ring.parse("[1,0,1]")
    assert ring.format(f) == "1+t^2"
    assert ring.format(ring.mul(ring.parse("1+t"), ring.parse("1+t"))) == "1+t^2"
    assert ring.format(ring.zero) == "0"


def test_gaussian_literals(gauss):
    ring, _ = gauss
    z = ring.parse("1/2+3/4 i")
    assert z == (Fraction(1, 2), Fraction(3, 4))
    assert ring.format(z) == "1/2+3/4 i"
    i = ring.parse("i")
    assert ring.mul(i, i) == ring.parse("-1")
    assert ring.format(ring.parse("-i")) == "-i"


def test_int_rat_tri_literals(int_rat_tri):
    ring, _ = int_rat_tri
    x = ring.parse("(0,1/2)")
    assert ring.format(x) == "(0,1/2)"
    assert ring.mul(x, x) == ring.zero
    assert ring.closed_form_idempotents() == [ring.zero, ring.one]


def test_small_rationals_order():
    assert small_rationals(2) == [0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)]


def test_split_top_respects_nesting():
    assert split_top("<(1,0)|[0,1]>,2", ",") == ["<(1,0)|[0,1]>", "2"]
    with pytest.raises(LiteralError):
        split_top("(1,2", ",")


def test_bad_literal_names_grammar(tri4):
    ring, _ = tri4
    with pytest.raises(LiteralError, match=r"\(a,b\)"):
        ring.parse("(1,2,3)")


def test_sampleable_rings_refuse_enumeration(gauss, tri4):
    ring, _ = gauss
    with pytest.raises(BackendError):
        ring.elements()
    assert sample(ring, 7, 5) == sample(ring, 7, 5)
    finite, _ = tri4
    with pytest.raises(BackendError):
        finite.sample(0, 3)


def test_scan_set_puts_hints_first(tri4):
    ring, _ = tri4
    hint = ring.parse("(2,0)")
    scanned = scan_set(ring, 0, 0, [hint])
    assert scanned[0] == hint
    assert len(scanned) == 17


def test_size_cap(settings):
    capped = settings.model_copy(update={"enumerable_size_cap": 10})
    with pytest.raises(SizeError):
        build_ring(RingSpec.zn(16), capped)


def test_tables_need_zero_at_index_zero(settings):
    spec = RingSpec.tables(add=[[1, 0], [0, 1]], mul=[[1, 1], [1, 0]])
    with pytest.raises(ValidationError) as exc:
        build_ring(spec, settings)
    assert exc.value.law == "additive-identity"


def test_tables_without_unity(settings):
    spec = RingSpec.tables(add=[[0, 1], [1, 0]], mul=[[0, 0], [0, 0]])
    with pytest.raises(ValidationError) as exc:
        build_ring(spec, settings)
    assert exc.value.law == "unity"


def test_zero_ring_rejected(settings):
    spec = RingSpec.tables(add=[[0, 1], [1, 0]], mul=[[0, 1], [1, 1]])
    with pytest.raises(ValidationError) as exc:
        build_ring(spec, settings)
    assert exc.value.law == "nontrivial"


def test_distributivity_failure_has_witness(settings):
    spec = RingSpec.tables(add=Z3_ADD, mul=[[0, 0, 0], [0, 1, 2], [0, 2, 2]])
    with pytest.raises(ValidationError) as exc:
        build_ring(spec, settings)
    assert exc.value.law == "left-distributivity"
    assert exc.value.witness == {"a": "#2", "b": "#1", "c": "#1"}


def test_valid_tables_ring(settings):
    spec = RingSpec.tables(add=Z3_ADD, mul=[[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    ring = build_ring(spec, settings)
    assert ring.one == 1
    assert ring.format(2) == "#2"
    assert ring.parse("2") == 2


def test_descriptor_rejects_malformed_tables():
    with pytest.raises(ValueError):
        RingSpec.tables(add=[[0, 1]], mul=[[0, 1]])


def test_env_prefix(monkeypatch):
    monkeypatch.setenv("RINGLAB_SCAN_CAP", "123")
    assert Settings().scan_cap == 123


@pytest.mark.parametrize("fixture", ["gauss", "int_rat_tri", "z2poly", "tsum"])
def test_canonical_form_is_stable(fixture, request):
    ring, _ = request.getfixturevalue(fixture)
    for a in ring.sample(11, 200):
        once = ring.canon(a)
        assert ring.canon(once) == once
        assert ring.canon(ring.mul(once, ring.one)) == once
