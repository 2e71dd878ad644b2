"""Theorem harness - hypothesis table, sufficient-condition branches, both directions"""

from typing import Dict, Optional

import structlog

from ..annihilators import idempotent_profile, principal_left_ideal
from ..config import Settings, get_settings
from ..errors import BackendError, CapError, HypothesisError
from ..maps import QuasiDerivation
from ..models import BackendKind, HypothesisReport, Verdict, VerdictKind
from ..properties import PropertyScanner
from ..rings import Ring
from .proposition import converse_extraction, ore_pq_baer_bounded

logger = structlog.get_logger(__name__)

HYPOTHESIS_ROWS = ("pq-baer-right", "stable", "c-sigma", "skew-armendariz", "rigid", "reduced")


def _inconclusive(prop: str, reason: str, **witness: str) -> Verdict:
    return Verdict(property=prop, kind=VerdictKind.INCONCLUSIVE, witness=witness or None, notes=[reason])


def central_rows(scanner: PropertyScanner) -> Dict[str, Verdict]:
    """S_l = B, and sigma(Re) inside Re for central e"""
    ring, sigma = scanner.ring, scanner.sigma
    try:
        profile = idempotent_profile(ring)
    except BackendError as e:
        reason = str(e)
        return {"sl-equals-b": _inconclusive("sl-equals-b", reason),
                "central-sigma-stable": _inconclusive("central-sigma-stable", reason)}

    if profile.left_semicentral == profile.central:
        sl_b = Verdict(property="sl-equals-b", kind=VerdictKind.HOLDS,
                       bounds={"idempotents": len(profile.idempotents)})
    else:
        extra = sorted(profile.left_semicentral - profile.central, key=ring.format)[0]
        sl_b = Verdict(property="sl-equals-b", kind=VerdictKind.FAILS, witness={"e": ring.format(extra)})

    central_stable = Verdict(property="central-sigma-stable", kind=VerdictKind.HOLDS,
                             bounds={"central": len(profile.central)})
    for e in sorted(profile.central, key=ring.format):
        if profile.closed_form or ring.kind != BackendKind.ENUMERABLE:
            broken = ring.mul(sigma(e), e) != sigma(e)
        else:
            left_ideal = principal_left_ideal(ring, e)
            broken = any(sigma(x) not in left_ideal for x in left_ideal)
        if broken:
            central_stable = Verdict(property="central-sigma-stable", kind=VerdictKind.FAILS,
                                     witness={"e": ring.format(e)})
            break
    return {"sl-equals-b": sl_b, "central-sigma-stable": central_stable}


def _certified(verdict: Verdict) -> bool:
    return verdict.kind in (VerdictKind.HOLDS, VerdictKind.HOLDS_BOUNDED)


def theorem_roundtrip(entry_name: str, ring: Ring, qd: QuasiDerivation, seed: Optional[int] = None,
                      samples: Optional[int] = None, deg_p: int = 1, deg_phi: int = 2,
                      hints: Optional[Dict] = None, settings: Optional[Settings] = None) -> HypothesisReport:
    """Hypothesis rows, the sufficient-condition branches and both directions, never raising"""
    settings = settings or get_settings()
    scanner = PropertyScanner(ring, qd, seed=seed, samples=samples, hints=hints, settings=settings)
    rows: Dict[str, Verdict] = {}
    for name in HYPOTHESIS_ROWS:
        try:
            rows[name] = scanner.check(name)
        except (BackendError, CapError) as e:
            rows[name] = _inconclusive(name, str(e))
    rows.update(central_rows(scanner))

    ok = {name: _certified(v) for name, v in rows.items()}
    branches = {
        "i": ok["skew-armendariz"] and ok["c-sigma"],
        "ii": ok["sl-equals-b"] and ok["central-sigma-stable"] and ok["c-sigma"],
        "iii": ok["rigid"],
        "proposition": ok["stable"] and ok["c-sigma"],
    }
    notes = []

    pq_baer = rows["pq-baer-right"]
    if pq_baer.failed:
        forward = Verdict(property="ore-pq-baer", kind=VerdictKind.HOLDS, vacuous=True,
                          notes=["ring is not right p.q.-Baer; the forward direction has no premise"])
    else:
        try:
            forward = ore_pq_baer_bounded(ring, qd, deg_p, deg_phi, seed=seed, samples=samples,
                                          hints=hints, settings=settings)
        except HypothesisError as e:
            forward = _inconclusive("ore-pq-baer", str(e), hypothesis=e.hypothesis)
        except (BackendError, CapError) as e:
            forward = _inconclusive("ore-pq-baer", str(e))

    try:
        backward = converse_extraction(ring, qd, deg_phi, settings)
        if not ok["skew-armendariz"]:
            backward.notes.append("skew-Armendariz hypothesis not certified; agreement checked regardless")
    except (BackendError, CapError) as e:
        backward = _inconclusive("converse", str(e))

    theorem_asserted = (
        (branches["i"] or branches["iii"])
        and ok["pq-baer-right"]
        and _certified(forward) and not forward.vacuous
        and _certified(backward)
    )
    if branches["proposition"] and _certified(forward) and not forward.vacuous and not theorem_asserted:
        notes.append("forward direction asserted at bounds through the proposition's own hypotheses")
    if rows["rigid"].kind == VerdictKind.INCONCLUSIVE and not rows["rigid"].witness:
        notes.append("rigidity sampled with no refutation; branch (iii) stays unasserted")
    if pq_baer.failed and not theorem_asserted:
        notes.append("ring is not right p.q.-Baer; consistent non-instance")

    report = HypothesisReport(
        entry=entry_name, rows=rows, branches=branches, forward=forward, backward=backward,
        theorem_asserted=theorem_asserted, notes=notes,
    )
    logger.info(f"Roundtrip {entry_name}: branches={[k for k, v in branches.items() if v]}, "
                f"asserted={theorem_asserted}")
    return report
