"""Lemma checks - exhaustive re-enactments over finite rings"""

import itertools
from typing import Iterable, Optional

import structlog

from ..annihilators import (
    idempotent_profile,
    principal_left_ideal,
    principal_right_ideal,
    right_ann_principal,
)
from ..config import Settings, get_settings
from ..errors import BackendError, InvariantError
from ..maps import QuasiDerivation, enumerate_endos, make_derivation
from ..models import BackendKind, VerdictKind, Verdict, ZERO_MAP
from ..properties import PropertyScanner
from ..rings import Ring

logger = structlog.get_logger(__name__)


def _require_enumerable(ring: Ring, lemma: str) -> None:
    if ring.kind != BackendKind.ENUMERABLE:
        raise BackendError(f"{lemma} needs an Enumerable ring, {ring.name} is Sampleable")


def _stable(ring: Ring, qd: QuasiDerivation, e) -> bool:
    left_ideal = principal_left_ideal(ring, e)
    return all(qd.sigma(x) in left_ideal and qd.delta(x) in left_ideal for x in left_ideal)


def lemma_stability(ring: Ring, qd: QuasiDerivation, j_max: Optional[int] = None,
                    settings: Optional[Settings] = None) -> Verdict:
    """c sigma(ab) = c delta(ab) = 0 and c f_k^j(ab) = 0 whenever b lies in r(cR) = eR
    with e left semicentral and Re stable under sigma and delta"""
    settings = settings or get_settings()
    j_max = settings.lemma_j_max if j_max is None else j_max
    _require_enumerable(ring, "lemma_stability")
    elems = ring.elements()
    profile = idempotent_profile(ring)
    zero = ring.zero
    stable = [e for e in elems if e in profile.left_semicentral and _stable(ring, qd, e)]
    generated = {e: principal_right_ideal(ring, e) for e in stable}

    tuples = 0
    for c in elems:
        ann = right_ann_principal(ring, c).members
        for e in stable:
            if generated[e] != ann:
                continue
            for b, a in itertools.product(sorted(ann, key=elems.index), elems):
                tuples += 1
                ab = ring.mul(a, b)
                failures = []
                if ring.mul(c, qd.sigma(ab)) != zero:
                    failures.append(("sigma", None, None))
                if ring.mul(c, qd.delta(ab)) != zero:
                    failures.append(("delta", None, None))
                for j in range(j_max + 1):
                    for k, value in enumerate(qd.row(j, ab)):
                        if ring.mul(c, value) != zero:
                            failures.append(("f", k, j))
                if not failures:
                    continue
                which, k, j = failures[0]
                if which == "f" and ring.mul(c, qd.f_map_oracle(k, j, ab)) == zero:
                    raise InvariantError(f"memoized f_{k}^{j} disagrees with the word oracle")
                witness = {"a": ring.format(a), "b": ring.format(b), "c": ring.format(c), "e": ring.format(e),
                           "map": which if which != "f" else f"f_{k}^{j}"}
                return Verdict(property="lemma-stability", kind=VerdictKind.FAILS, witness=witness)
    return Verdict(property="lemma-stability", kind=VerdictKind.HOLDS,
                   bounds={"tuples": tuples, "j_max": j_max, "stable_idempotents": len(stable)})


def lemma_rigid_equivalence(sweep: Iterable[Ring], settings: Optional[Settings] = None) -> Verdict:
    """sigma-rigid iff (C_sigma and reduced), over every endomorphism of every swept ring"""
    settings = settings or get_settings()
    rings = endos_checked = 0
    for ring in sweep:
        _require_enumerable(ring, "lemma_rigid_equivalence")
        rings += 1
        for sigma in enumerate_endos(ring, settings):
            endos_checked += 1
            qd = QuasiDerivation(sigma, make_derivation(ring, sigma, ZERO_MAP, settings), settings)
            scanner = PropertyScanner(ring, qd, settings=settings)
            rigid = scanner.check_sigma_rigid().passed
            right_side = scanner.check_c_sigma().passed and scanner.check_reduced().passed
            if rigid != right_side:
                direction = "rigid-not-c-sigma-reduced" if rigid else "c-sigma-reduced-not-rigid"
                return Verdict(property="lemma-rigid-equivalence", kind=VerdictKind.FAILS, witness={
                    "ring": ring.name, "sigma": str(sigma.spec.images), "direction": direction,
                })
    logger.info(f"Rigid equivalence checked on {rings} rings, {endos_checked} endomorphisms")
    return Verdict(property="lemma-rigid-equivalence", kind=VerdictKind.HOLDS,
                   bounds={"rings": rings, "endomorphisms": endos_checked})


def lemma_compat_f(ring: Ring, qd: QuasiDerivation, j_max: Optional[int] = None,
                   settings: Optional[Settings] = None) -> Verdict:
    """For a compatible ring, ab = 0 implies a f_i^j(b) = 0"""
    settings = settings or get_settings()
    j_max = settings.compat_j_max if j_max is None else j_max
    compatible = PropertyScanner(ring, qd, settings=settings).check_compatible()
    if compatible.failed:
        return Verdict(property="lemma-compat-f", kind=VerdictKind.HOLDS, vacuous=True,
                       notes=[f"ring is not (sigma,delta)-compatible: {compatible.label()}"])
    _require_enumerable(ring, "lemma_compat_f")
    zero = ring.zero
    pairs = 0
    for a, b in itertools.product(ring.elements(), repeat=2):
        if ring.mul(a, b) != zero:
            continue
        pairs += 1
        for j in range(j_max + 1):
            for i, value in enumerate(qd.row(j, b)):
                if ring.mul(a, value) != zero:
                    return Verdict(property="lemma-compat-f", kind=VerdictKind.FAILS, witness={
                        "a": ring.format(a), "b": ring.format(b), "i": str(i), "j": str(j),
                    })
    return Verdict(property="lemma-compat-f", kind=VerdictKind.HOLDS,
                   bounds={"zero_pairs": pairs, "j_max": j_max})
