"""Built-in example rings with their expected verdicts"""

from typing import Dict, List, Optional, Tuple

import structlog

from .annihilators import idempotent_profile, profile_labels
from .config import Settings, get_settings
from .errors import BackendError, CapError, HypothesisError, RingLabError
from .lab import (
    converse_extraction,
    lemma_compat_f,
    ore_ann_idempotent_bounded,
    lemma_rigid_equivalence,
    lemma_stability,
    ore_idempotents_bounded,
    ore_pq_baer_bounded,
    theorem_roundtrip,
)
from .maps import QuasiDerivation, build_quasi_derivation, make_derivation, make_endo
from .models import (
    CatalogEntry,
    EntryReport,
    Expectation,
    ExpectationResult,
    HypothesisReport,
    MapKind,
    MapSpec,
    RingSpec,
    Verdict,
    VerdictKind,
    IDENTITY_MAP,
    ZERO_MAP,
)
from .properties import PropertyScanner
from .rings import Ring, build_ring

logger = structlog.get_logger(__name__)

HOLDS = VerdictKind.HOLDS
BOUNDED = VerdictKind.HOLDS_BOUNDED
FAILS = VerdictKind.FAILS
INCONCLUSIVE = VerdictKind.INCONCLUSIVE

F2 = RingSpec.zn(2)
T2F2 = RingSpec.ut2(F2)
E11_E12X_E22_E12X = ["{(1,0,0)}+{(0,1,0)} x", "{(0,0,1)}+{(0,1,0)} x"]
TRI4_SQUARE_ZERO = "{(2,0)}+{(2,1)} x"


def _expect(prop: str, expected: VerdictKind, anchor: str, witness: Optional[Dict[str, str]] = None,
            component: Optional[str] = None) -> Expectation:
    return Expectation(property=prop, expected=expected, anchor=anchor, witness=witness, component=component)


CATALOG: List[CatalogEntry] = [
    CatalogEntry(
        name="z2poly_eval0",
        description="F2[t] with sigma(f) = f(0)",
        ring=RingSpec.poly(F2, "t"),
        sigma=MapSpec(kind=MapKind.EVAL0),
        hints={
            "c-sigma": ["1+t", "t"],
            "sigma-compatible": ["1+t", "t"],
            "ore-ann-idempotent": ["x"],
        },
        expectations=[
            _expect("sigma-compatible", FAILS, "fg = (1+t)t != 0 while f sigma(g) = (1+t) sigma(t) = 0",
                    {"f": "1+t", "g": "t"}),
            _expect("c-sigma", FAILS, "f sigma(g) = 0 with g(0) = 0, but fg != 0", {"f": "1+t", "g": "t"}),
            _expect("compatible", FAILS, "sigma-compatibility fails on f=1+t, g=t", {"part": "sigma-compatible"}),
            _expect("rigid", FAILS, "DERIVED: t sigma(t) = t * 0 = 0", {"a": "t"}),
            _expect("reduced", INCONCLUSIVE, "TRIVIAL: F2[t] is a domain, sampling cannot certify"),
            _expect("skew-armendariz", INCONCLUSIVE, "F2[t] is sigma-skew Armendariz; sampled only"),
            _expect("stable", HOLDS, "only two idempotents 0 and 1, so Re is sigma-stable"),
            _expect("ore-pq-baer", INCONCLUSIVE, "R does not satisfy (C_sigma): the Ore extension is not p.q.-Baer",
                    {"hypothesis": "c-sigma"}),
            _expect("ore-idempotents", BOUNDED, "R[x; sigma] has only the idempotents 0 and 1"),
            _expect("ore-ann-idempotent", FAILS,
                    "t lies in r(xS) and 1 does not, so r(xS) is neither 0S nor 1S: S is not right p.q.-Baer",
                    {"p": "{1} x", "member": "{t}"}),
            _expect("lemma-compat-f", HOLDS, "DERIVED: compatibility fails first, vacuous pass"),
        ],
    ),
    CatalogEntry(
        name="tri4_negate",
        description="[[a,b],[0,a]] over Z4 with sigma negating the corner",
        ring=RingSpec.tri2(RingSpec.zn(4)),
        sigma=MapSpec(kind=MapKind.NEGATE_OFFDIAG),
        hints={
            "pq-baer-right": ["(2,0)"],
            "skew-armendariz": [TRI4_SQUARE_ZERO],
        },
        expectations=[
            _expect("compatible", HOLDS, "R/I is sigma-compatible (all 256 pairs)"),
            _expect("skew-armendariz", FAILS, "((2,0)+(2,1)x)^2 = 0 but (2,1) sigma((2,0)) != 0", {
                "p": TRI4_SQUARE_ZERO, "q": TRI4_SQUARE_ZERO, "i": "1", "j": "0", "product": "{(0,2)} x",
            }),
            _expect("pq-baer-right", FAILS, "DERIVED: r((2,0)R) has four elements and no idempotent generator", {
                "a": "(2,0)", "annihilator": "{(0,0), (0,2), (2,0), (2,2)}",
            }),
            _expect("reduced", FAILS, "DERIVED: (0,1)^2 = 0", {"a": "(0,1)"}),
            _expect("abelian", HOLDS, "DERIVED: idempotents (0,0) and (1,0) are central"),
            _expect("rigid", FAILS, "DERIVED: (0,1) sigma((0,1)) = (0,1)(0,3) = 0", {"a": "(0,1)"}),
            _expect("c-sigma", HOLDS, "DERIVED: compatibility implies (C_sigma)"),
            _expect("stable", HOLDS, "DERIVED: sigma fixes both idempotents"),
            _expect("lemma-stability", HOLDS, "DERIVED: exhaustive over stable semicentral idempotents"),
            _expect("lemma-compat-f", HOLDS, "R/I is sigma-compatible, so ab = 0 implies a f_i^j(b) = 0"),
        ],
    ),
    CatalogEntry(
        name="int_rat_tri_halve",
        description="[[a,t],[0,a]] with a in Z, t in Q and sigma halving t",
        ring=RingSpec.int_rat_tri(),
        sigma=MapSpec(kind=MapKind.HALVE_OFFDIAG),
        hints={"rigid": ["(0,1)"]},
        expectations=[
            _expect("rigid", FAILS, "(0,t) sigma((0,t)) = 0 with (0,t) != 0", {"a": "(0,1)"}),
            _expect("c-sigma", INCONCLUSIVE, "R satisfies (C_sigma); sampled over 2000 pairs"),
            _expect("skew-armendariz", INCONCLUSIVE,
                    "R is sigma-skew Armendariz; sampled at degree 1 with no refutation"),
            _expect("reduced", FAILS, "DERIVED: (0,1)^2 = 0", {"a": "(0,1)"}),
            _expect("idempotent-profile", HOLDS, "(a,t)^2 = (a,t) forces a in {0,1} and t = 0",
                    {"idempotents": "{(0,0), (1,0)}"}),
            _expect("stable", HOLDS, "DERIVED: sigma fixes (0,0) and (1,0)"),
            _expect("abelian", HOLDS, "DERIVED: commutative ring"),
        ],
    ),
    CatalogEntry(
        name="t2f2_id",
        description="upper triangular 2x2 matrices over F2, identity sigma",
        ring=T2F2,
        hints={"skew-armendariz": E11_E12X_E22_E12X},
        expectations=[
            _expect("pq-baer-right", HOLDS, "T_n(R1) is right p.q.-Baer"),
            _expect("skew-armendariz", FAILS, "DERIVED: (E11+E12x)(E22+E12x) = 0 while E12 E22 != 0", {
                "p": E11_E12X_E22_E12X[0], "q": E11_E12X_E22_E12X[1], "i": "1", "j": "0",
            }),
            _expect("reduced", FAILS, "DERIVED: E12^2 = 0", {"a": "(0,1,0)"}),
            _expect("rigid", FAILS, "DERIVED: E12 sigma(E12) = 0", {"a": "(0,1,0)"}),
            _expect("abelian", FAILS, "DERIVED: E11 is not central"),
            _expect("stable", HOLDS, "TRIVIAL: identity sigma and zero delta"),
            _expect("c-sigma", HOLDS, "TRIVIAL: identity sigma"),
            _expect("compatible", HOLDS, "TRIVIAL: identity sigma and zero delta"),
            _expect("ore-pq-baer", BOUNDED, "R right p.q.-Baer iff R[x] right p.q.-Baer"),
            _expect("converse", BOUNDED, "DERIVED: Ore-level and ring-level idempotents agree"),
            _expect("lemma-stability", HOLDS, "DERIVED: exhaustive tuple scan"),
            _expect("lemma-compat-f", HOLDS, "TRIVIAL: f maps are identity or zero"),
        ],
    ),
    CatalogEntry(
        name="t2f2_inner",
        description="upper triangular 2x2 matrices over F2, inner derivation by E12",
        ring=T2F2,
        delta=MapSpec(kind=MapKind.INNER, element="(0,1,0)"),
        hints={"skew-armendariz": E11_E12X_E22_E12X},
        expectations=[
            _expect("pq-baer-right", HOLDS, "T_n(R1) is right p.q.-Baer"),
            _expect("stable", FAILS, "DERIVED: delta(E11) = E12 lies outside R E11", {"e": "(1,0,0)", "map": "delta"}),
            _expect("skew-armendariz", FAILS, "DERIVED: (E11+E12x)(E22+E12x) = 0 while E12 x E22 = E12 x",
                    {"i": "1", "j": "0", "product": "{(0,1,0)} x"}),
            _expect("compatible", FAILS, "DERIVED: E11 E22 = 0 while E11 delta(E22) = E12"),
            _expect("ore-pq-baer", INCONCLUSIVE, "DERIVED: stability hypothesis fails", {"hypothesis": "stable"}),
            _expect("lemma-stability", HOLDS, "DERIVED: only 0 and 1 give stable Re"),
            _expect("lemma-compat-f", HOLDS, "DERIVED: compatibility fails first, vacuous pass"),
        ],
    ),
    CatalogEntry(
        name="tsum_square",
        description="T2(F2) + F2[y] with sigma = identity + (y -> y^2)",
        ring=RingSpec.sum(T2F2, RingSpec.poly(F2, "y")),
        sigma=MapSpec(kind=MapKind.COMPONENTWISE, left=IDENTITY_MAP, right=MapSpec(kind=MapKind.SQUARE_VAR)),
        expectations=[
            _expect("c-sigma", INCONCLUSIVE, "R satisfies (C_sigma) since D[y] is a domain; sampled"),
            _expect("stable", HOLDS, "idempotents A+0 and A+1 are fixed by sigma, so Re is stable"),
            _expect("pq-baer-right", HOLDS, "T_n(R1) is right p.q.-Baer", component="left"),
            _expect("reduced", FAILS, "R is not reduced", {"a": "<(0,1,0)|0>"}),
            _expect("rigid", FAILS, "R is not reduced, hence not sigma-rigid", {"a": "<(0,1,0)|0>"}),
            _expect("abelian", FAILS, "DERIVED: E11 + 0 is not central"),
        ],
    ),
    CatalogEntry(
        name="gauss_conj",
        description="Q(i) with conjugation and delta(z) = z - conj(z)",
        ring=RingSpec.gauss(),
        sigma=MapSpec(kind=MapKind.CONJ),
        delta=MapSpec(kind=MapKind.CONJ_DIFF),
        expectations=[
            _expect("rigid", INCONCLUSIVE, "R is sigma-rigid: z conj(z) = |z|^2; no refutation in samples"),
            _expect("reduced", INCONCLUSIVE, "R is Baer and reduced; no refutation in samples"),
            _expect("c-sigma", INCONCLUSIVE, "sigma-rigid, so (C_sigma) holds; sampled"),
            _expect("stable", HOLDS, "only idempotents 0 and 1"),
            _expect("abelian", HOLDS, "TRIVIAL: field"),
            _expect("ore-pq-baer", INCONCLUSIVE, "hypotheses of the theorem hold; scan needs a finite ring"),
        ],
    ),
    # Sweep rings for the rigidity equivalence
    CatalogEntry(
        name="zn2",
        description="the field F2",
        ring=F2,
        roundtrip=False,
        expectations=[
            _expect("reduced", HOLDS, "TRIVIAL: field"),
            _expect("baer", HOLDS, "TRIVIAL: annihilators are {0} and R"),
            _expect("pq-baer-right", HOLDS, "TRIVIAL: field"),
            _expect("skew-armendariz", BOUNDED, "TRIVIAL: pq = 0 forces p = 0 or q = 0"),
        ],
    ),
    CatalogEntry(
        name="zn3",
        description="the field F3",
        ring=RingSpec.zn(3),
        roundtrip=False,
        expectations=[
            _expect("reduced", HOLDS, "TRIVIAL: field"),
            _expect("baer", HOLDS, "TRIVIAL: annihilators are {0} and R"),
            _expect("skew-armendariz", BOUNDED, "TRIVIAL: domain"),
        ],
    ),
    CatalogEntry(
        name="zn4",
        description="Z/4Z",
        ring=RingSpec.zn(4),
        roundtrip=False,
        expectations=[
            _expect("reduced", FAILS, "TRIVIAL: 2^2 = 0", {"a": "2"}),
            _expect("rigid", FAILS, "DERIVED: 2 sigma(2) = 0", {"a": "2"}),
            _expect("pq-baer-right", FAILS, "DERIVED: r(2R) = {0,2} has no idempotent generator", {"a": "2"}),
            _expect("abelian", HOLDS, "TRIVIAL: commutative"),
            _expect("skew-armendariz", BOUNDED, "DERIVED: Z/nZ is Armendariz"),
        ],
    ),
    CatalogEntry(
        name="zn2_zn2",
        description="F2 + F2",
        ring=RingSpec.sum(F2, F2),
        roundtrip=False,
        expectations=[
            _expect("reduced", HOLDS, "DERIVED: product of fields"),
            _expect("abelian", HOLDS, "TRIVIAL: commutative"),
            _expect("baer", HOLDS, "DERIVED: product of Baer rings"),
            _expect("pq-baer-right", HOLDS, "DERIVED: product of fields"),
        ],
    ),
]

SWEEP = ("zn2", "zn3", "zn4", "zn2_zn2")


def load_catalog() -> List[CatalogEntry]:
    return list(CATALOG)


def get_entry(name: str) -> CatalogEntry:
    for entry in CATALOG:
        if entry.name == name:
            return entry
    raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(e.name for e in CATALOG)}")


def build_entry(entry: CatalogEntry, settings: Optional[Settings] = None) -> Tuple[Ring, QuasiDerivation]:
    settings = settings or get_settings()
    ring = build_ring(entry.ring, settings)
    return ring, build_quasi_derivation(ring, entry.sigma, entry.delta, settings)


def component_context(entry: CatalogEntry, ring: Ring, qd: QuasiDerivation, side: str,
                      settings: Settings) -> Tuple[Ring, QuasiDerivation]:
    """One summand of a direct sum with the matching component maps"""
    structure = ring.structure
    component = getattr(structure, side, None)
    if component is None or side not in ("left", "right"):
        raise BackendError(f"{ring.name} has no {side} component")
    index = 0 if side == "left" else 1
    if qd.sigma.components is not None:
        sigma = qd.sigma.components[index]
    else:
        sigma = make_endo(component, IDENTITY_MAP, settings)
    delta_spec = ZERO_MAP
    if entry.delta.kind == MapKind.COMPONENTWISE:
        delta_spec = entry.delta.left if side == "left" else entry.delta.right
    return component, QuasiDerivation(sigma, make_derivation(component, sigma, delta_spec, settings), settings)


class EntryRunner:
    """Evaluates properties for one catalog entry"""

    def __init__(self, entry: CatalogEntry, seed: Optional[int] = None, samples: Optional[int] = None,
                 deg_p: int = 1, deg_phi: int = 2, settings: Optional[Settings] = None):
        self.entry = entry
        self.settings = settings or get_settings()
        self.seed = seed
        self.samples = samples
        self.deg_p = deg_p
        self.deg_phi = deg_phi
        self.ring, self.qd = build_entry(entry, self.settings)
        self._cache: Dict[Tuple[Optional[str], str], Verdict] = {}

    def seed_from(self, report: HypothesisReport) -> None:
        """Reuse verdicts a roundtrip already computed on the whole ring"""
        for name, verdict in report.rows.items():
            self._cache[(None, name)] = verdict
        if not report.forward.vacuous:
            self._cache[(None, "ore-pq-baer")] = report.forward
        self._cache[(None, "converse")] = report.backward

    def _context(self, component: Optional[str]) -> Tuple[Ring, QuasiDerivation]:
        if component is None:
            return self.ring, self.qd
        return component_context(self.entry, self.ring, self.qd, component, self.settings)

    def evaluate(self, prop: str, component: Optional[str] = None) -> Verdict:
        key = (component, prop)
        if key not in self._cache:
            try:
                self._cache[key] = self._evaluate(prop, component)
            except HypothesisError as e:
                self._cache[key] = Verdict(property=prop, kind=INCONCLUSIVE,
                                           witness={"hypothesis": e.hypothesis}, notes=[str(e)])
            except (BackendError, CapError) as e:
                self._cache[key] = Verdict(property=prop, kind=INCONCLUSIVE, notes=[str(e)])
        return self._cache[key]

    def _evaluate(self, prop: str, component: Optional[str]) -> Verdict:
        ring, qd = self._context(component)
        hints = self.entry.hints if component is None else {}
        settings = self.settings
        if prop == "idempotent-profile":
            labels = profile_labels(ring, idempotent_profile(ring))
            return Verdict(property=prop, kind=HOLDS,
                           witness={k: "{" + ", ".join(v) + "}" for k, v in labels.items()})
        if prop == "lemma-stability":
            return lemma_stability(ring, qd, settings=settings)
        if prop == "lemma-compat-f":
            return lemma_compat_f(ring, qd, settings=settings)
        if prop == "ore-pq-baer":
            return ore_pq_baer_bounded(ring, qd, self.deg_p, self.deg_phi, seed=self.seed,
                                       samples=self.samples, hints=hints, settings=settings)
        if prop == "converse":
            return converse_extraction(ring, qd, self.deg_phi, settings)
        if prop == "ore-idempotents":
            return ore_idempotents_bounded(ring, qd, settings=settings)
        if prop == "ore-ann-idempotent":
            polys = hints.get(prop)
            if not polys:
                raise BackendError(f"{prop} needs a polynomial hint on {self.entry.name}")
            return ore_ann_idempotent_bounded(ring, qd, polys[0], settings=settings)
        scanner = PropertyScanner(ring, qd, seed=self.seed, samples=self.samples, hints=hints, settings=settings)
        return scanner.check(prop)


def expectation_met(expectation: Expectation, actual: Verdict) -> bool:
    """Kind matches and every expected witness item appears in the actual witness"""
    if actual.kind != expectation.expected:
        return False
    if expectation.witness:
        got = actual.witness or {}
        return all(got.get(k) == v for k, v in expectation.witness.items())
    return True


def run_entry(entry: CatalogEntry, seed: Optional[int] = None, samples: Optional[int] = None,
              deg_p: int = 1, deg_phi: int = 2, roundtrip: Optional[bool] = None,
              settings: Optional[Settings] = None) -> EntryReport:
    """Evaluate every expectation of an entry, plus its theorem roundtrip"""
    settings = settings or get_settings()
    runner = EntryRunner(entry, seed, samples, deg_p, deg_phi, settings)
    roundtrip_report = None
    if entry.roundtrip if roundtrip is None else roundtrip:
        roundtrip_report = theorem_roundtrip(entry.name, runner.ring, runner.qd, seed=seed, samples=samples,
                                             deg_p=deg_p, deg_phi=deg_phi, hints=entry.hints, settings=settings)
        runner.seed_from(roundtrip_report)

    results = []
    for expectation in entry.expectations:
        try:
            actual = runner.evaluate(expectation.property, expectation.component)
        except RingLabError as e:
            actual = Verdict(property=expectation.property, kind=INCONCLUSIVE, notes=[f"error: {e}"])
            logger.error(f"{entry.name}: {expectation.property} raised {e}")
        met = expectation_met(expectation, actual)
        if not met:
            logger.warning(f"{entry.name}: {expectation.property} expected {expectation.expected.value}, "
                           f"got {actual.label()}")
        results.append(ExpectationResult(expectation=expectation, actual=actual, met=met))

    return EntryReport(name=entry.name, results=results, roundtrip=roundtrip_report)


def run_sweep(settings: Optional[Settings] = None) -> EntryReport:
    """Rigidity equivalence over every endomorphism of every sweep ring"""
    settings = settings or get_settings()
    rings = [build_ring(get_entry(name).ring, settings) for name in SWEEP]
    expectation = _expect("lemma-rigid-equivalence", HOLDS,
                          "(C_sigma) and reduced iff sigma-rigid, over all endomorphisms")
    actual = lemma_rigid_equivalence(rings, settings)
    return EntryReport(name="sweep", results=[
        ExpectationResult(expectation=expectation, actual=actual, met=expectation_met(expectation, actual)),
    ])
