"""Idempotent witnesses for right p.q.-Baer Ore extensions, and the converse"""

import itertools
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import structlog

from ..annihilators import (
    generated_by_idempotent,
    idempotent_profile,
    principal_right_ideal,
    right_ann_principal,
)
from ..config import Settings, get_settings
from ..errors import BackendError, CapError, HypothesisError, InvariantError
from ..maps import QuasiDerivation
from ..models import BackendKind, PqBaerWitness, PrincipalKind, Verdict, VerdictKind
from ..properties import PropertyScanner, format_members
from ..rings import Ring
from ..skew_poly import OreExtension, SkewPoly, bounded_right_ann_in_ore, check_scan_cap, multipliers

logger = structlog.get_logger(__name__)


def _bounded(prop: str, **bounds: int) -> Verdict:
    return Verdict(property=prop, kind=VerdictKind.HOLDS_BOUNDED, bounds=bounds)


def _fails(prop: str, **witness: str) -> Verdict:
    return Verdict(property=prop, kind=VerdictKind.FAILS, witness=witness)


def in_principal(ideal: FrozenSet[Any], phi: SkewPoly) -> bool:
    return all(c in ideal for c in phi.coeffs)


def _cascade(ext: OreExtension, p: SkewPoly) -> Optional[Verdict]:
    """Coefficients of p b phi against the named equations for delta = 0, deg p = deg phi = 1"""
    ring, sigma = ext.ring, ext.qd.sigma
    if not ext.qd.delta.is_zero or p.degree != 1:
        return None
    c0, c1 = p.coefficient(0), p.coefficient(1)
    elems = ring.elements()
    checked = 0
    for b, a0, a1 in itertools.product(elems, repeat=3):
        checked += 1
        product = p * ext.constant(b) * ext.poly([a0, a1])
        equations = {
            "x^2": ring.mul(c1, sigma(ring.mul(b, a1))),
            "x^1": ring.add(ring.mul(c1, sigma(ring.mul(b, a0))), ring.mul(ring.mul(c0, b), a1)),
            "x^0": ring.mul(ring.mul(c0, b), a0),
        }
        for k, name in enumerate(("x^0", "x^1", "x^2")):
            if product.coefficient(k) != equations[name]:
                return _fails("cascade", b=ring.format(b), phi=str(ext.poly([a0, a1])), equation=name)
    return _bounded("cascade", checked=checked)


def build_pq_baer_witness(ring: Ring, qd: QuasiDerivation, p: SkewPoly, deg_bound: int,
                          seed: Optional[int] = None, settings: Optional[Settings] = None) -> PqBaerWitness:
    """e = e_n ... e_0 from r(c_i R) = e_i R, then both claims checked at bounded degree"""
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    ext = p.parent
    check_scan_cap(ext, deg_bound, settings)
    profile = idempotent_profile(ring)

    coefficient_idempotents: List[Any] = []
    annihilators = []
    for c in p.coeffs:
        ann = right_ann_principal(ring, c)
        e_i = generated_by_idempotent(ring, ann)
        if e_i is None:
            raise HypothesisError(
                "pq-baer-right", detail=f"r({ring.format(c)}R) = {format_members(ring, ann.members)} "
                                        "has no idempotent generator",
            )
        coefficient_idempotents.append(e_i)
        annihilators.append(ann.members)

    e = ring.product(reversed(coefficient_idempotents))
    eR = principal_right_ideal(ring, e)
    meet = frozenset(ring.elements())
    for members in annihilators:
        meet &= members
    if e not in profile.left_semicentral or eR != meet:
        raise InvariantError(f"witness idempotent {ring.format(e)} does not generate the annihilator meet")
    e_poly = ext.constant(e)

    claim1 = None
    checked = 0
    for w in multipliers(ext, PrincipalKind.PS, deg_bound):
        checked += 1
        if not (p * w * e_poly).is_zero():
            claim1 = _fails("claim1", multiplier=str(w))
            break
    claim1 = claim1 or _bounded("claim1", deg_bound=deg_bound, checked=checked)

    claim1_random = None
    for phi in ext.random_polys(seed, settings.claim1_random_phi, deg_bound):
        if not (p * phi * e_poly).is_zero():
            claim1_random = _fails("claim1-random", phi=str(phi))
            break
    claim1_random = claim1_random or _bounded(
        "claim1-random", samples=settings.claim1_random_phi, seed=seed, deg_bound=deg_bound)

    pr_fragment = bounded_right_ann_in_ore(p, PrincipalKind.PR, deg_bound, settings)
    outside = next((phi for phi in pr_fragment if not in_principal(eR, phi)), None)
    claim2 = (_fails("claim2", phi=str(outside)) if outside is not None
              else _bounded("claim2", deg_bound=deg_bound, fragment=len(pr_fragment)))

    # pS multipliers include the constants, so the pS fragment sits inside the pR one
    extra = [p * w for w in multipliers(ext, PrincipalKind.PS, deg_bound) if w.degree >= 1]
    extra = [f for f in dict.fromkeys(extra) if not f.is_zero()]
    ps_fragment = {phi for phi in pr_fragment if all((f * phi).is_zero() for f in extra)}
    es_fragment = {phi for phi in ext.polys_up_to(deg_bound) if in_principal(eR, phi)}
    mismatch = next(iter(sorted(ps_fragment ^ es_fragment, key=str)), None)
    if mismatch is not None:
        side = "annihilator-only" if mismatch in ps_fragment else "eS-only"
        conclusion = _fails("conclusion", phi=str(mismatch), side=side)
    else:
        conclusion = _bounded("conclusion", deg_bound=deg_bound, fragment=len(ps_fragment))

    return PqBaerWitness(
        p=str(p),
        coefficient_idempotents=[ring.format(x) for x in coefficient_idempotents],
        e=ring.format(e),
        claim1=claim1,
        claim1_random=claim1_random,
        claim2=claim2,
        conclusion=conclusion,
        cascade=_cascade(ext, p) if deg_bound >= 1 else None,
    )


def check_hypotheses(scanner: PropertyScanner) -> Dict[str, Verdict]:
    """C_sigma, stability and right p.q.-Baer, raising on the first refuted one"""
    rows = {}
    for name in ("c-sigma", "stable", "pq-baer-right"):
        verdict = scanner.check(name)
        rows[name] = verdict
        if verdict.failed:
            raise HypothesisError(name, verdict, detail=verdict.label())
    return rows


def ore_pq_baer_bounded(ring: Ring, qd: QuasiDerivation, deg_p: int = 1, deg_phi: int = 2,
                        seed: Optional[int] = None, samples: Optional[int] = None,
                        hints: Optional[Dict[str, List[str]]] = None,
                        settings: Optional[Settings] = None) -> Verdict:
    """Every p of degree <= deg_p gets a witness whose claims pass at degree deg_phi"""
    settings = settings or get_settings()
    scanner = PropertyScanner(ring, qd, seed=seed, samples=samples, hints=hints, settings=settings)
    rows = check_hypotheses(scanner)
    prop = "ore-pq-baer"
    if ring.kind != BackendKind.ENUMERABLE:
        return Verdict(property=prop, kind=VerdictKind.INCONCLUSIVE,
                       bounds={"deg_p": deg_p, "deg_phi": deg_phi, "seed": scanner.seed},
                       notes=["hypotheses not refuted; the Ore scan needs an Enumerable ring"]
                       + [f"{k}: {v.label()}" for k, v in rows.items()])
    ext = scanner.ext
    check_scan_cap(ext, max(deg_p, deg_phi), settings)
    count = 0
    for p in ext.polys_up_to(deg_p):
        count += 1
        witness = build_pq_baer_witness(ring, qd, p, deg_phi, scanner.seed, settings)
        if not witness.passed:
            checks = [("claim1", witness.claim1), ("claim1-random", witness.claim1_random),
                      ("claim2", witness.claim2), ("conclusion", witness.conclusion),
                      ("cascade", witness.cascade)]
            claim = next(name for name, v in checks if v is not None and not v.passed)
            return _fails(prop, p=str(p), e=witness.e, claim=claim)
    logger.info(f"Ore p.q.-Baer certified on {ring.name} for {count} polynomials")
    return _bounded(prop, deg_p=deg_p, deg_phi=deg_phi, polynomials=count)


def converse_extraction(ring: Ring, qd: QuasiDerivation, deg_bound: int = 2,
                        settings: Optional[Settings] = None) -> Verdict:
    """The degree-0 idempotent of each bounded r_S(aS) must generate r_R(aR)"""
    settings = settings or get_settings()
    prop = "converse"
    if ring.kind != BackendKind.ENUMERABLE:
        raise BackendError(f"converse extraction needs an Enumerable ring, {ring.name} is Sampleable")
    ext = OreExtension(qd, settings)
    check_scan_cap(ext, deg_bound, settings)
    profile = idempotent_profile(ring)
    elems = ring.elements()
    idempotents = [e for e in elems if e in profile.idempotents]
    fragments = {e: frozenset(phi for phi in ext.polys_up_to(deg_bound)
                              if in_principal(principal_right_ideal(ring, e), phi))
                 for e in idempotents}

    agreed = missing = 0
    notes = []
    for a in elems:
        fragment = frozenset(bounded_right_ann_in_ore(ext.constant(a), PrincipalKind.PS, deg_bound, settings))
        ore_e = next((e for e in idempotents if fragments[e] == fragment), None)
        ring_ann = right_ann_principal(ring, a).members
        if ore_e is None:
            missing += 1
            notes.append(f"a={ring.format(a)}: no idempotent generator at degree {deg_bound}")
            continue
        if principal_right_ideal(ring, ore_e) != ring_ann:
            return _fails(prop, a=ring.format(a), ore_e=ring.format(ore_e),
                          annihilator=format_members(ring, ring_ann))
        agreed += 1
        notes.append(f"a={ring.format(a)}: e={ring.format(ore_e)}")
    bounds = {"deg_bound": deg_bound, "agreed": agreed, "without_generator": missing}
    if missing:
        return Verdict(property=prop, kind=VerdictKind.INCONCLUSIVE, bounds=bounds, notes=notes)
    return Verdict(property=prop, kind=VerdictKind.HOLDS_BOUNDED, bounds=bounds, notes=notes)


def _search_ore_idempotents(ext: OreExtension, degree: int, height: int,
                            settings: Settings) -> Tuple[List[SkewPoly], int]:
    """Idempotents up to a degree with coefficients from a bounded pool, plus the candidate count"""
    ring, qd = ext.ring, ext.qd
    pool = ring.elements() if ring.kind == BackendKind.ENUMERABLE else ring.small_elements(height)
    sigma = qd.sigma
    found: List[SkewPoly] = []
    candidates = 0

    if qd.delta.is_zero:
        # with delta = 0 the x^n coefficient of p^2 only involves c_0..c_n
        def extend(coeffs: List[Any]) -> None:
            nonlocal candidates
            n = len(coeffs)
            if n == degree + 1:
                candidates += 1
                p = ext.poly(coeffs)
                if p * p == p:
                    found.append(p)
                return
            for c in pool:
                trial = coeffs + [c]
                square_n = ring.total(ring.mul(trial[i], sigma.power(i, trial[n - i])) for i in range(n + 1))
                if square_n == c:
                    extend(trial)

        extend([])
    else:
        if len(pool) ** (degree + 1) > settings.scan_cap:
            raise CapError(f"{len(pool)}^{degree + 1} candidates exceed scan cap")
        for p in ext.polys_up_to(degree, pool):
            candidates += 1
            if p * p == p:
                found.append(p)

    return list(dict.fromkeys(found)), candidates


def ore_idempotents_bounded(ring: Ring, qd: QuasiDerivation, degree: Optional[int] = None,
                            height: Optional[int] = None, settings: Optional[Settings] = None) -> Verdict:
    """Idempotents of R[x; sigma, delta] up to a degree, coefficients from a bounded pool"""
    settings = settings or get_settings()
    degree = settings.ore_idempotent_degree if degree is None else degree
    height = settings.ore_idempotent_height if height is None else height
    prop = "ore-idempotents"
    ext = OreExtension(qd, settings)
    found, candidates = _search_ore_idempotents(ext, degree, height, settings)
    bounds = {"degree": degree, "height": height, "candidates": candidates}
    extra = next((p for p in found if p != ext.zero and p != ext.one), None)
    if extra is not None:
        return Verdict(property=prop, kind=VerdictKind.FAILS, witness={"e": str(extra)}, bounds=bounds)
    return Verdict(property=prop, kind=VerdictKind.HOLDS_BOUNDED, bounds=bounds,
                   notes=[f"idempotents found: {', '.join(str(p) for p in found)}"])


def ore_ann_idempotent_bounded(ring: Ring, qd: QuasiDerivation, p_text: str, deg_bound: int = 1,
                               degree: Optional[int] = None, height: Optional[int] = None,
                               settings: Optional[Settings] = None) -> Verdict:
    """Is r(pS) = eS for some idempotent e of S = R[x; sigma, delta]?

    Annihilator members have degree <= deg_bound and multipliers are r x^k with
    k <= deg_bound, both over the whole ring when it is finite and over the
    low-height elements otherwise. Candidate idempotents come from the bounded idempotent search.
    """
    settings = settings or get_settings()
    degree = settings.ore_idempotent_degree if degree is None else degree
    height = settings.ore_idempotent_height if height is None else height
    prop = "ore-ann-idempotent"
    ext = OreExtension(qd, settings)
    p = ext.parse(p_text)
    pool = ring.elements() if ring.kind == BackendKind.ENUMERABLE else ring.probe_elements()
    if len(pool) ** (deg_bound + 1) > settings.scan_cap:
        raise CapError(f"{len(pool)}^{deg_bound + 1} polynomials exceed scan cap {settings.scan_cap}")

    factors = [p * ext.monomial(r, k) for k in range(deg_bound + 1) for r in pool]
    factors = [f for f in dict.fromkeys(factors) if not f.is_zero()]

    def annihilates(phi: SkewPoly) -> bool:
        return all((f * phi).is_zero() for f in factors)

    members = [phi for phi in ext.polys_up_to(deg_bound, pool) if annihilates(phi)]
    idempotents, _ = _search_ore_idempotents(ext, degree, height, settings)
    bounds = {"deg_bound": deg_bound, "pool": len(pool), "degree": degree, "height": height}

    # eS = {phi : e phi = phi} for an idempotent e
    for e in idempotents:
        if annihilates(e) and all(e * phi == phi for phi in members):
            return Verdict(property=prop, kind=VerdictKind.HOLDS_BOUNDED, bounds=bounds,
                           witness={"p": str(p), "e": str(e)})

    nonzero = [phi for phi in members if not phi.is_zero()]
    member = min(nonzero, key=lambda phi: phi.degree) if nonzero else ext.zero
    logger.info(f"r(({p})S) on {ring.name}: {len(members)} members, no idempotent generator")
    return Verdict(
        property=prop, kind=VerdictKind.FAILS, bounds=bounds,
        witness={"p": str(p), "member": str(member), "idempotents": ", ".join(str(e) for e in idempotents)},
        notes=["idempotents come from the bounded search; membership uses the bounded multipliers"],
    )
