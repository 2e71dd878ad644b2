"""Endomorphisms, sigma-derivations and the f_i^j maps"""

import pytest

from ringlab.ore.errors import BackendError, CapError, MismatchError, ValidationError
from ringlab.ore.maps import QuasiDerivation, enumerate_endos, make_derivation, make_endo
from ringlab.ore.models import MapKind, MapSpec, RingSpec
from ringlab.ore.rings import build_ring


def test_eval0_drops_positive_degrees(z2poly):
    ring, qd = z2poly
    assert ring.format(qd.sigma(ring.parse("1+t+t^3"))) == "1"
    assert ring.format(qd.sigma(ring.parse("t"))) == "0"


def test_negate_offdiag(tri4):
    ring, qd = tri4
    assert ring.format(qd.sigma(ring.parse("(1,1)"))) == "(1,3)"
    assert qd.delta.is_zero


def test_square_var_needs_polynomials(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    with pytest.raises(ValidationError) as exc:
        make_endo(ring, MapSpec(kind=MapKind.SQUARE_VAR), settings)
    assert exc.value.law == "applicability"


def test_table_endo_must_be_additive(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    with pytest.raises(ValidationError) as exc:
        make_endo(ring, MapSpec(kind=MapKind.TABLE, images=[0, 1, 3, 2]), settings)
    assert exc.value.law == "additive"
    assert exc.value.witness == {"a": "1", "b": "1"}


def test_table_endo_must_be_unital(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    with pytest.raises(ValidationError) as exc:
        make_endo(ring, MapSpec(kind=MapKind.TABLE, images=[0, 0, 0, 0]), settings)
    assert exc.value.law == "unital"


def test_table_shape_checked(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    with pytest.raises(ValidationError) as exc:
        make_endo(ring, MapSpec(kind=MapKind.TABLE, images=[0, 1]), settings)
    assert exc.value.law == "table-shape"


def test_inner_derivation(t2f2_inner):
    ring, qd = t2f2_inner
    assert ring.format(qd.delta(ring.parse("(1,0,0)"))) == "(0,1,0)"
    assert ring.format(qd.delta(ring.parse("(1,0,1)"))) == "(0,0,0)"


def test_conj_diff(gauss):
    ring, qd = gauss
    assert ring.format(qd.delta(ring.parse("1+i"))) == "2 i"
    assert qd.delta(ring.parse("3/2")) == ring.zero


def test_leibniz_violation_rejected(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    sigma = make_endo(ring, settings=settings)
    with pytest.raises(ValidationError) as exc:
        make_derivation(ring, sigma, MapSpec(kind=MapKind.TABLE, images=[0, 1, 2, 3]), settings)
    assert exc.value.law == "leibniz"
    assert exc.value.witness == {"a": "1", "b": "1"}


def test_sigma_and_delta_share_a_ring(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    other = build_ring(RingSpec.zn(4), settings)
    sigma = make_endo(ring, settings=settings)
    with pytest.raises(MismatchError):
        make_derivation(other, sigma, settings=settings)
    delta = make_derivation(other, make_endo(other, settings=settings), settings=settings)
    with pytest.raises(MismatchError):
        QuasiDerivation(sigma, delta, settings)


@pytest.mark.parametrize("fixture", ["tri4", "t2f2_inner", "zn4"])
def test_f_map_agrees_with_word_oracle(fixture, request):
    ring, qd = request.getfixturevalue(fixture)
    for r in ring.elements():
        for j in range(9):
            for i in range(j + 1):
                expected = qd.f_map_oracle(i, j, r)
                assert qd.f_map(i, j, r) == expected
                assert qd.f_map_top_down(i, j, r) == expected


def test_f_map_on_sampled_gaussians(gauss):
    ring, qd = gauss
    for r in ring.sample(3, 30):
        for j in range(7):
            for i in range(j + 1):
                assert qd.f_map(i, j, r) == qd.f_map_oracle(i, j, r)


def test_row_holds_coefficients_of_x_power(t2f2_inner):
    ring, qd = t2f2_inner
    e11 = ring.parse("(1,0,0)")
    # x E11 = E11 x + E12
    assert qd.row(1, e11) == (ring.parse("(0,1,0)"), e11)
    assert qd.row(0, e11) == (e11,)


def test_f_map_index_errors(tri4, settings):
    ring, qd = tri4
    with pytest.raises(IndexError):
        qd.f_map(3, 2, ring.one)
    with pytest.raises(IndexError):
        qd.f_map_oracle(-1, 2, ring.one)
    assert qd.f_map_top_down(3, 2, ring.one) == ring.zero
    with pytest.raises(CapError):
        qd.f_map_oracle(0, settings.oracle_cap + 1, ring.one)


def test_enumerate_endos(settings):
    pair = build_ring(RingSpec.sum(RingSpec.zn(2), RingSpec.zn(2)), settings)
    assert len(enumerate_endos(pair, settings)) == 4
    assert len(enumerate_endos(build_ring(RingSpec.zn(4), settings), settings)) == 1


def test_enumerate_endos_limits(tri4, gauss, settings):
    with pytest.raises(CapError):
        enumerate_endos(tri4[0], settings)
    with pytest.raises(BackendError):
        enumerate_endos(gauss[0], settings)
