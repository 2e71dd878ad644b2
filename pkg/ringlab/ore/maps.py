"""Endomorphisms, sigma-derivations and the f_i^j word-sum maps"""

import itertools
import random
import threading
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import structlog

from .config import Settings, get_settings
from .errors import BackendError, CapError, MismatchError, ValidationError
from .models import BackendKind, MapKind, MapSpec, IDENTITY_MAP, ZERO_MAP
from .rings import (
    ConstantDiagonalTriangular,
    DirectSum,
    GaussianRationals,
    IntRationalTriangular,
    PolynomialRing,
    Ring,
)

logger = structlog.get_logger(__name__)


def law_pairs(ring: Ring, settings: Settings) -> List[Tuple[Any, Any]]:
    """Every pair when affordable, otherwise probes plus seeded samples"""
    if ring.kind == BackendKind.ENUMERABLE and ring.size ** 2 <= settings.scan_cap:
        elems = ring.elements()
        return list(itertools.product(elems, repeat=2))
    if ring.kind == BackendKind.ENUMERABLE:
        rng = random.Random(settings.default_seed)
        drawn = [ring.random_element(rng) for _ in range(2 * settings.law_samples)]
    else:
        drawn = ring.sample(settings.default_seed, 2 * settings.law_samples)
    probes = ring.probe_elements()[:12] if ring.kind == BackendKind.SAMPLEABLE else []
    pairs = list(itertools.product(probes, repeat=2))
    pairs += [(drawn[2 * k], drawn[2 * k + 1]) for k in range(settings.law_samples)]
    return pairs


class Endo:
    """A validated unital ring endomorphism"""

    def __init__(self, ring: Ring, fn: Callable[[Any], Any], spec: MapSpec,
                 components: Optional[Tuple["Endo", "Endo"]] = None):
        self.ring = ring
        self._fn = fn
        self.spec = spec
        self.components = components
        self.is_identity = spec.kind == MapKind.IDENTITY

    def __call__(self, a: Any) -> Any:
        return self._fn(a)

    def power(self, k: int, a: Any) -> Any:
        for _ in range(k):
            a = self._fn(a)
        return a

    @property
    def name(self) -> str:
        return self.spec.describe()

    def __repr__(self) -> str:
        return f"Endo({self.name} on {self.ring.name})"


class SigmaDerivation:
    """A validated sigma-derivation: d(ab) = s(a)d(b) + d(a)b"""

    def __init__(self, ring: Ring, sigma: Endo, fn: Callable[[Any], Any], spec: MapSpec):
        self.ring = ring
        self.sigma = sigma
        self._fn = fn
        self.spec = spec
        self.is_zero = spec.kind == MapKind.ZERO

    def __call__(self, a: Any) -> Any:
        return self._fn(a)

    @property
    def name(self) -> str:
        return self.spec.describe()

    def __repr__(self) -> str:
        return f"SigmaDerivation({self.name} on {self.ring.name})"


def _not_applicable(spec: MapSpec, ring: Ring) -> ValidationError:
    return ValidationError("applicability", {"map": spec.describe(), "ring": ring.name})


def _lift(ring: Ring, coord_fn: Callable[[Any], Any]) -> Callable[[Any], Any]:
    """Map acting on constructor coordinates, as a map on ring elements"""
    if ring.structure is ring:
        return coord_fn
    return lambda a: ring.element(coord_fn(ring.value(a)))


def _endo_function(ring: Ring, spec: MapSpec, settings: Settings):
    structure = ring.structure
    if spec.kind == MapKind.IDENTITY:
        return (lambda a: a), None
    if spec.kind == MapKind.TABLE:
        if ring.kind != BackendKind.ENUMERABLE:
            raise _not_applicable(spec, ring)
        images = list(spec.images)
        if len(images) != ring.size or any(not 0 <= v < ring.size for v in images):
            raise ValidationError("table-shape", {"images": str(images), "size": str(ring.size)})
        return (lambda a: images[a]), None
    if spec.kind == MapKind.EVAL0 and isinstance(structure, PolynomialRing):
        return _lift(ring, lambda f: structure.constant(f[0]) if f else ()), None
    if spec.kind == MapKind.SQUARE_VAR and isinstance(structure, PolynomialRing):
        def square_var(f):
            out = [structure.base.zero] * max(0, 2 * len(f) - 1)
            for k, c in enumerate(f):
                out[2 * k] = c
            return structure.canon(out)
        return _lift(ring, square_var), None
    if spec.kind == MapKind.NEGATE_OFFDIAG:
        if isinstance(structure, ConstantDiagonalTriangular):
            return _lift(ring, lambda x: (x[0], structure.base.neg(x[1]))), None
        if isinstance(structure, IntRationalTriangular):
            return _lift(ring, lambda x: (x[0], -x[1])), None
    if spec.kind == MapKind.HALVE_OFFDIAG and isinstance(structure, IntRationalTriangular):
        return _lift(ring, lambda x: (x[0], x[1] / 2)), None
    if spec.kind == MapKind.CONJ and isinstance(structure, GaussianRationals):
        return _lift(ring, lambda z: (z[0], -z[1])), None
    if spec.kind == MapKind.COMPONENTWISE and isinstance(structure, DirectSum):
        left = make_endo(structure.left, spec.left, settings)
        right = make_endo(structure.right, spec.right, settings)
        return _lift(ring, lambda x: (left(x[0]), right(x[1]))), (left, right)
    raise _not_applicable(spec, ring)


def _validate_endo(endo: Endo, settings: Settings) -> None:
    ring = endo.ring
    f = ring.format
    if endo(ring.one) != ring.one:
        raise ValidationError("unital", {"sigma(1)": f(endo(ring.one))})
    for a, b in law_pairs(ring, settings):
        sa, sb = endo(a), endo(b)
        if endo(ring.add(a, b)) != ring.add(sa, sb):
            raise ValidationError("additive", {"a": f(a), "b": f(b)})
        if endo(ring.mul(a, b)) != ring.mul(sa, sb):
            raise ValidationError("multiplicative", {"a": f(a), "b": f(b)})


def make_endo(ring: Ring, spec: MapSpec = IDENTITY_MAP, settings: Optional[Settings] = None) -> Endo:
    """Build and validate the endomorphism a descriptor names"""
    settings = settings or get_settings()
    fn, components = _endo_function(ring, spec, settings)
    endo = Endo(ring, fn, spec, components)
    if not endo.is_identity:
        _validate_endo(endo, settings)
    return endo


def _component_sigmas(ring: Ring, sigma: Endo, settings: Settings) -> Tuple[Endo, Endo]:
    structure = ring.structure
    if sigma.components is not None:
        return sigma.components
    if sigma.is_identity:
        return make_endo(structure.left, IDENTITY_MAP, settings), make_endo(structure.right, IDENTITY_MAP, settings)
    raise ValidationError("componentwise", {"sigma": sigma.name, "reason": "sigma is not componentwise"})


def _derivation_function(ring: Ring, sigma: Endo, spec: MapSpec, settings: Settings):
    if spec.kind == MapKind.ZERO:
        zero = ring.zero
        return lambda a: zero
    if spec.kind == MapKind.INNER:
        d = ring.parse(spec.element)
        return lambda r: ring.sub(ring.mul(d, r), ring.mul(sigma(r), d))
    if spec.kind == MapKind.CONJ_DIFF:
        return lambda r: ring.sub(r, sigma(r))
    if spec.kind == MapKind.TABLE and ring.kind == BackendKind.ENUMERABLE:
        images = list(spec.images)
        if len(images) != ring.size or any(not 0 <= v < ring.size for v in images):
            raise ValidationError("table-shape", {"images": str(images), "size": str(ring.size)})
        return lambda a: images[a]
    structure = ring.structure
    if spec.kind == MapKind.COMPONENTWISE and isinstance(structure, DirectSum):
        sigma_l, sigma_r = _component_sigmas(ring, sigma, settings)
        left = make_derivation(structure.left, sigma_l, spec.left, settings)
        right = make_derivation(structure.right, sigma_r, spec.right, settings)
        return _lift(ring, lambda x: (left(x[0]), right(x[1])))
    raise _not_applicable(spec, ring)


def make_derivation(ring: Ring, sigma: Endo, spec: MapSpec = ZERO_MAP,
                    settings: Optional[Settings] = None) -> SigmaDerivation:
    """Build and validate a sigma-derivation against the twisted Leibniz law"""
    settings = settings or get_settings()
    if sigma.ring is not ring:
        raise MismatchError("sigma and delta must act on the same ring")
    delta = SigmaDerivation(ring, sigma, _derivation_function(ring, sigma, spec, settings), spec)
    if delta.is_zero:
        return delta
    f = ring.format
    for a, b in law_pairs(ring, settings):
        if delta(ring.add(a, b)) != ring.add(delta(a), delta(b)):
            raise ValidationError("additive", {"a": f(a), "b": f(b)})
        leibniz = ring.add(ring.mul(sigma(a), delta(b)), ring.mul(delta(a), b))
        if delta(ring.mul(a, b)) != leibniz:
            raise ValidationError("leibniz", {"a": f(a), "b": f(b)})
    return delta


class QuasiDerivation:
    """A pair (sigma, delta) on one ring with memoized f_i^j rows"""

    def __init__(self, sigma: Endo, delta: SigmaDerivation, settings: Optional[Settings] = None):
        if sigma.ring is not delta.ring or delta.sigma is not sigma:
            raise MismatchError("sigma and delta must share one ring")
        self.sigma = sigma
        self.delta = delta
        self.ring = sigma.ring
        self.settings = settings or get_settings()
        self._memo: Dict[Tuple[int, Any], Tuple[Any, ...]] = {}
        self._lock = threading.Lock()

    @property
    def name(self) -> str:
        return f"({self.sigma.name}, {self.delta.name})"

    @property
    def is_trivial(self) -> bool:
        return self.sigma.is_identity and self.delta.is_zero

    def _next_row(self, prev: Tuple[Any, ...]) -> Tuple[Any, ...]:
        ring, sigma, delta = self.ring, self.sigma, self.delta
        j = len(prev)
        row = []
        for i in range(j + 1):
            value = sigma(prev[i - 1]) if i >= 1 else ring.zero
            if i <= j - 1 and not delta.is_zero:
                value = ring.add(value, delta(prev[i]))
            row.append(value)
        return tuple(row)

    def row(self, j: int, r: Any) -> Tuple[Any, ...]:
        """(f_0^j(r), ..., f_j^j(r)), the coefficients of x^j r"""
        if j < 0:
            raise IndexError(f"row index {j} is negative")
        if self.ring.kind != BackendKind.ENUMERABLE:
            current: Tuple[Any, ...] = (r,)
            for _ in range(j):
                current = self._next_row(current)
            return current
        with self._lock:
            cached = self._memo.get((j, r))
        if cached is not None:
            return cached
        current = (r,) if j == 0 else self._next_row(self.row(j - 1, r))
        with self._lock:
            self._memo[(j, r)] = current
        return current

    def f_map(self, i: int, j: int, r: Any) -> Any:
        """f_i^j(r) = sigma(f_{i-1}^{j-1}(r)) + delta(f_i^{j-1}(r)), f_0^0 = id"""
        if i < 0 or i > j:
            raise IndexError(f"f_{i}^{j} needs 0 <= i <= j")
        return self.row(j, r)[i]

    def f_map_top_down(self, i: int, j: int, r: Any) -> Any:
        """Unmemoized recursion on the same recurrence"""
        ring = self.ring
        if i < 0 or i > j:
            return ring.zero
        if j == 0:
            return r
        value = self.sigma(self.f_map_top_down(i - 1, j - 1, r)) if i >= 1 else ring.zero
        if i <= j - 1:
            value = ring.add(value, self.delta(self.f_map_top_down(i, j - 1, r)))
        return value

    def f_map_oracle(self, i: int, j: int, r: Any) -> Any:
        """Sum over all words with i letters sigma and j-i letters delta"""
        if i < 0 or i > j:
            raise IndexError(f"f_{i}^{j} needs 0 <= i <= j")
        if j > self.settings.oracle_cap:
            raise CapError(f"word oracle limited to j <= {self.settings.oracle_cap}, got {j}")
        ring = self.ring
        total = ring.zero
        for positions in itertools.combinations(range(j), i):
            word = [self.sigma if k in positions else self.delta for k in range(j)]
            value = r
            for letter in reversed(word):
                value = letter(value)
            total = ring.add(total, value)
        return total


def build_quasi_derivation(ring: Ring, sigma_spec: MapSpec = IDENTITY_MAP, delta_spec: MapSpec = ZERO_MAP,
                           settings: Optional[Settings] = None) -> QuasiDerivation:
    settings = settings or get_settings()
    sigma = make_endo(ring, sigma_spec, settings)
    delta = make_derivation(ring, sigma, delta_spec, settings)
    qd = QuasiDerivation(sigma, delta, settings)
    logger.info(f"Quasi-derivation built: {qd.name} on {ring.name}")
    return qd


def enumerate_endos(ring: Ring, settings: Optional[Settings] = None) -> List[Endo]:
    """All unital endomorphisms of a small Enumerable ring, by backtracking"""
    settings = settings or get_settings()
    if ring.kind != BackendKind.ENUMERABLE:
        raise BackendError(f"{ring.name} is Sampleable")
    n = ring.size
    if n > settings.endo_enum_cap:
        raise CapError(f"endomorphism enumeration limited to {settings.endo_enum_cap} elements, {ring.name} has {n}")

    zero, one = ring.zero, ring.one
    found: List[List[int]] = []
    images: List[Optional[int]] = [None] * n

    def consistent(x: int) -> bool:
        # only pairs touching x can have become decidable
        assigned = [a for a in range(n) if images[a] is not None]
        for a in assigned:
            for b in assigned:
                s, m = ring.add(a, b), ring.mul(a, b)
                if x not in (a, b, s, m):
                    continue
                if images[s] is not None and images[s] != ring.add(images[a], images[b]):
                    return False
                if images[m] is not None and images[m] != ring.mul(images[a], images[b]):
                    return False
        return True

    def extend(x: int) -> None:
        if x == n:
            found.append(list(images))
            return
        forced = {zero: zero, one: one}.get(x)
        candidates: Iterable[int] = [forced] if forced is not None else range(n)
        for v in candidates:
            images[x] = v
            if consistent(x):
                extend(x + 1)
            images[x] = None

    extend(0)
    endos = [make_endo(ring, MapSpec(kind=MapKind.TABLE, images=imgs), settings) for imgs in found]
    logger.info(f"Enumerated {len(endos)} endomorphisms of {ring.name}")
    return endos
