"""Annihilators, idempotent profiles and idempotent generation on finite rings"""

from typing import Any, Dict, FrozenSet, Iterable, List, Optional

import structlog

from .config import Settings, get_settings
from .errors import BackendError, CapError, InvariantError, NotRightIdealError
from .models import AnnSet, AnnSource, BackendKind, ClosureKind, IdempotentProfile, Side
from .rings import DirectSum, Ring

logger = structlog.get_logger(__name__)


def _require_enumerable(ring: Ring, what: str) -> List[Any]:
    if ring.kind != BackendKind.ENUMERABLE:
        raise BackendError(f"{what} needs an Enumerable ring, {ring.name} is Sampleable")
    return ring.elements()


def principal_right_ideal(ring: Ring, a: Any) -> FrozenSet[Any]:
    return frozenset(ring.mul(a, r) for r in ring.elements())


def principal_left_ideal(ring: Ring, a: Any) -> FrozenSet[Any]:
    return frozenset(ring.mul(r, a) for r in ring.elements())


def right_ann(ring: Ring, X: Iterable[Any]) -> AnnSet:
    """r_R(X) = {b : xb = 0 for all x in X}"""
    elems = _require_enumerable(ring, "right_ann")
    X = tuple(dict.fromkeys(X))
    zero = ring.zero
    members = frozenset(b for b in elems if all(ring.mul(x, b) == zero for x in X))
    source = AnnSource.ELEMENT if len(X) == 1 else AnnSource.SET
    return AnnSet(side=Side.RIGHT, source=source, generators=X, members=members)


def left_ann(ring: Ring, X: Iterable[Any]) -> AnnSet:
    """l_R(X) = {b : bx = 0 for all x in X}"""
    elems = _require_enumerable(ring, "left_ann")
    X = tuple(dict.fromkeys(X))
    zero = ring.zero
    members = frozenset(b for b in elems if all(ring.mul(b, x) == zero for x in X))
    source = AnnSource.ELEMENT if len(X) == 1 else AnnSource.SET
    return AnnSet(side=Side.LEFT, source=source, generators=X, members=members)


def _assert_two_sided(ring: Ring, members: FrozenSet[Any], label: str) -> None:
    for m in members:
        for r in ring.elements():
            if ring.mul(r, m) not in members or ring.mul(m, r) not in members:
                raise InvariantError(
                    f"{label} is not a two-sided ideal: {ring.format(m)} times {ring.format(r)} escapes"
                )


def right_ann_principal(ring: Ring, a: Any) -> AnnSet:
    """r_R(aR), asserted to be a two-sided ideal"""
    _require_enumerable(ring, "right_ann_principal")
    ann = right_ann(ring, principal_right_ideal(ring, a))
    _assert_two_sided(ring, ann.members, f"r({ring.format(a)}R)")
    return AnnSet(side=Side.RIGHT, source=AnnSource.PRINCIPAL, generators=(a,), members=ann.members)


def left_ann_principal(ring: Ring, a: Any) -> AnnSet:
    """l_R(Ra), asserted to be a two-sided ideal"""
    _require_enumerable(ring, "left_ann_principal")
    ann = left_ann(ring, principal_left_ideal(ring, a))
    _assert_two_sided(ring, ann.members, f"l(R{ring.format(a)})")
    return AnnSet(side=Side.LEFT, source=AnnSource.PRINCIPAL, generators=(a,), members=ann.members)


def _scan_profile(ring: Ring) -> IdempotentProfile:
    elems = ring.elements()
    mul = ring.mul
    idempotents = [e for e in elems if mul(e, e) == e]
    left = [e for e in idempotents if all(mul(mul(e, r), e) == mul(r, e) for r in elems)]
    right = [e for e in idempotents if all(mul(mul(e, r), e) == mul(e, r) for r in elems)]
    central = [e for e in idempotents if all(mul(e, r) == mul(r, e) for r in elems)]
    profile = IdempotentProfile(
        idempotents=frozenset(idempotents),
        left_semicentral=frozenset(left),
        right_semicentral=frozenset(right),
        central=frozenset(central),
    )
    if profile.left_semicentral & profile.right_semicentral != profile.central:
        raise InvariantError(f"S_l and S_r do not meet in B on {ring.name}")
    return profile


def _closed_form_profile(ring: Ring) -> IdempotentProfile:
    structure = ring.structure
    if isinstance(structure, DirectSum):
        left, right = idempotent_profile(structure.left), idempotent_profile(structure.right)

        def pairs(a, b):
            return frozenset((x, y) for x in a for y in b)

        return IdempotentProfile(
            idempotents=pairs(left.idempotents, right.idempotents),
            left_semicentral=pairs(left.left_semicentral, right.left_semicentral),
            right_semicentral=pairs(left.right_semicentral, right.right_semicentral),
            central=pairs(left.central, right.central),
            closed_form=True,
        )
    known = ring.closed_form_idempotents()
    if known is None or not ring.is_commutative():
        raise BackendError(f"no closed-form idempotents for {ring.name}")
    values = frozenset(known)
    return IdempotentProfile(
        idempotents=values, left_semicentral=values, right_semicentral=values, central=values,
        closed_form=True,
    )


def idempotent_profile(ring: Ring) -> IdempotentProfile:
    """Idempotents with S_l, S_r and B; scanned when finite, closed-form otherwise

    The result lives on the ring itself, so it is released with the ring.
    """
    if ring.profile_cache is None:
        if ring.kind == BackendKind.ENUMERABLE:
            ring.profile_cache = _scan_profile(ring)
        else:
            ring.profile_cache = _closed_form_profile(ring)
    return ring.profile_cache


def profile_labels(ring: Ring, profile: IdempotentProfile) -> Dict[str, List[str]]:
    """Formatted profile sets, each in canonical ring order"""
    order = {e: k for k, e in enumerate(ring.elements())} if ring.kind == BackendKind.ENUMERABLE else None

    def render(values: FrozenSet[Any]) -> List[str]:
        items = sorted(values, key=order.__getitem__) if order else sorted(values, key=ring.format)
        return [ring.format(v) for v in items]

    return {
        "idempotents": render(profile.idempotents),
        "left_semicentral": render(profile.left_semicentral),
        "right_semicentral": render(profile.right_semicentral),
        "central": render(profile.central),
    }


def _check_one_sided_ideal(ring: Ring, T: AnnSet) -> None:
    members = T.members
    kind = "right" if T.side == Side.RIGHT else "left"
    if ring.zero not in members:
        raise NotRightIdealError(f"set of size {len(members)} misses zero, not a {kind} ideal")
    for m in members:
        for n in members:
            if ring.add(m, n) not in members:
                raise NotRightIdealError(f"not closed under addition: {ring.format(m)} + {ring.format(n)}")
        for r in ring.elements():
            product = ring.mul(m, r) if T.side == Side.RIGHT else ring.mul(r, m)
            if product not in members:
                raise NotRightIdealError(
                    f"not a {kind} ideal: {ring.format(m)} times {ring.format(r)} escapes"
                )


def generated_by_idempotent(ring: Ring, T: AnnSet) -> Optional[Any]:
    """First idempotent e in canonical order with eR = T (Re = T for left sets), or None"""
    _require_enumerable(ring, "generated_by_idempotent")
    _check_one_sided_ideal(ring, T)
    profile = idempotent_profile(ring)
    for e in ring.elements():
        if e not in profile.idempotents:
            continue
        ideal = principal_right_ideal(ring, e) if T.side == Side.RIGHT else principal_left_ideal(ring, e)
        if ideal != T.members:
            continue
        if T.source == AnnSource.PRINCIPAL:
            semicentral = profile.left_semicentral if T.side == Side.RIGHT else profile.right_semicentral
            if e not in semicentral:
                raise InvariantError(f"annihilator generator {ring.format(e)} is not semicentral")
        return e
    return None


def ann_lattice_closure(ring: Ring, kind: ClosureKind = ClosureKind.QUASI_BAER,
                        settings: Optional[Settings] = None) -> List[AnnSet]:
    """Element-level right annihilators closed under pairwise intersection"""
    settings = settings or get_settings()
    elems = _require_enumerable(ring, "ann_lattice_closure")
    found: Dict[FrozenSet[Any], tuple] = {}
    for a in elems:
        ann = right_ann_principal(ring, a) if kind == ClosureKind.QUASI_BAER else right_ann(ring, [a])
        found.setdefault(ann.members, (a,))

    frontier = list(found)
    while frontier:
        fresh = []
        for m in frontier:
            for n in list(found):
                meet = m & n
                if meet in found:
                    continue
                found[meet] = found[m] + tuple(g for g in found[n] if g not in found[m])
                fresh.append(meet)
                if len(found) > settings.closure_cap:
                    raise CapError(f"annihilator closure exceeded {settings.closure_cap} members")
        frontier = fresh

    closure = [
        AnnSet(side=Side.RIGHT, source=AnnSource.SET, generators=gens, members=members)
        for members, gens in found.items()
    ]
    order = {e: k for k, e in enumerate(elems)}
    closure.sort(key=lambda s: (len(s.members), sorted(order[m] for m in s.members)))
    logger.debug(f"{kind.value} closure of {ring.name}: {len(closure)} annihilators")
    return closure
