"""Shared fixtures: settings and the catalog rings most tests work on"""

import pytest

from ringlab.ore.catalog import build_entry, get_entry
from ringlab.ore.config import Settings
from ringlab.ore.logs import configure_logging
from ringlab.ore.maps import build_quasi_derivation
from ringlab.ore.models import MapKind, MapSpec, RingSpec
from ringlab.ore.rings import build_ring
from ringlab.ore.skew_poly import OreExtension

configure_logging("WARNING")


@pytest.fixture
def settings() -> Settings:
    return Settings()


def _entry(name: str, settings: Settings):
    return build_entry(get_entry(name), settings)


@pytest.fixture
def tri4(settings):
    """tri2(zn(4)) with sigma negating the corner"""
    return _entry("tri4_negate", settings)


@pytest.fixture
def t2f2(settings):
    return _entry("t2f2_id", settings)


@pytest.fixture
def t2f2_inner(settings):
    return _entry("t2f2_inner", settings)


@pytest.fixture
def z2poly(settings):
    return _entry("z2poly_eval0", settings)


@pytest.fixture
def gauss(settings):
    return _entry("gauss_conj", settings)


@pytest.fixture
def int_rat_tri(settings):
    return _entry("int_rat_tri_halve", settings)


@pytest.fixture
def tsum(settings):
    return _entry("tsum_square", settings)


@pytest.fixture
def zn4(settings):
    ring = build_ring(RingSpec.zn(4), settings)
    return ring, build_quasi_derivation(ring, settings=settings)


@pytest.fixture
def f2t_plain(settings):
    """F2[t][x] with identity sigma and zero delta, a commutative polynomial ring in two variables"""
    ring = build_ring(RingSpec.poly(RingSpec.zn(2), "t"), settings)
    qd = build_quasi_derivation(ring, MapSpec(kind=MapKind.IDENTITY), settings=settings)
    return ring, qd, OreExtension(qd, settings)
