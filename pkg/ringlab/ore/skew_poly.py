"""Skew polynomial arithmetic in R[x; sigma, delta] with left coefficients"""

import itertools
import random
import re
from typing import Any, Iterator, List, Optional, Sequence, Tuple

import structlog

from .config import Settings, get_settings
from .errors import BackendError, CapError, LiteralError, MismatchError
from .maps import QuasiDerivation
from .models import BackendKind, PrincipalKind
from .rings import Ring, split_top

logger = structlog.get_logger(__name__)

NEG_INF = float("-inf")

_BARE_TERM = re.compile(r"^(?P<coef>.*?)\s*\*?\s*x(?:\^(?P<power>\d+))?$")


class SkewPoly:
    """Immutable polynomial sum c_k x^k with coefficients on the left"""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: "OreExtension", coeffs: Sequence[Any]):
        zero = parent.ring.zero
        trimmed = list(coeffs)
        while trimmed and trimmed[-1] == zero:
            trimmed.pop()
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "coeffs", tuple(trimmed))

    def __setattr__(self, name, value):
        raise AttributeError("SkewPoly is immutable")

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial"""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coefficient(self, k: int) -> Any:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.parent.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "SkewPoly") -> None:
        if not isinstance(other, SkewPoly) or other.parent is not self.parent:
            raise MismatchError("skew polynomials over different rings or quasi-derivations")

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        ring = self.parent.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.parent, [ring.add(self.coefficient(k), other.coefficient(k)) for k in range(n)])

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.parent, [self.parent.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return self.parent.mul(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SkewPoly) and other.parent is self.parent and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return self.parent.format(self)

    def __repr__(self) -> str:
        return f"SkewPoly({self.parent.format(self)})"


class OreExtension:
    """The ring R[x; sigma, delta] over a validated quasi-derivation"""

    def __init__(self, qd: QuasiDerivation, settings: Optional[Settings] = None):
        self.qd = qd
        self.ring: Ring = qd.ring
        self.settings = settings or get_settings()

    @property
    def name(self) -> str:
        return f"{self.ring.name}[x; {self.qd.sigma.name}, {self.qd.delta.name}]"

    def poly(self, coeffs: Sequence[Any]) -> SkewPoly:
        return SkewPoly(self, coeffs)

    def constant(self, a: Any) -> SkewPoly:
        return SkewPoly(self, [a])

    def monomial(self, a: Any, k: int) -> SkewPoly:
        return SkewPoly(self, [self.ring.zero] * k + [a])

    @property
    def zero(self) -> SkewPoly:
        return SkewPoly(self, [])

    @property
    def one(self) -> SkewPoly:
        return self.constant(self.ring.one)

    @property
    def x(self) -> SkewPoly:
        return self.monomial(self.ring.one, 1)

    def mul(self, p: SkewPoly, q: SkewPoly) -> SkewPoly:
        """sum over i, j, k of a_i f_k^i(b_j) x^(k+j)"""
        p._check(q)
        if p.is_zero() or q.is_zero():
            return self.zero
        ring, qd = self.ring, self.qd
        out = [ring.zero] * (len(p.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(p.coeffs):
            if a == ring.zero:
                continue
            for j, b in enumerate(q.coeffs):
                if b == ring.zero:
                    continue
                if i == 0:
                    out[j] = ring.add(out[j], ring.mul(a, b))
                    continue
                for k, fb in enumerate(qd.row(i, b)):
                    if fb != ring.zero:
                        out[k + j] = ring.add(out[k + j], ring.mul(a, fb))
        return SkewPoly(self, out)

    def monomial_product(self, a: Any, i: int, b: Any, j: int) -> SkewPoly:
        """a x^i . b x^j expanded as sum_k a f_k^i(b) x^(k+j)"""
        ring = self.ring
        out = [ring.zero] * (i + j + 1)
        for k, fb in enumerate(self.qd.row(i, b)):
            out[k + j] = ring.mul(a, fb)
        return SkewPoly(self, out)

    # Enumeration
    def polys_up_to(self, degree: int, pool: Optional[Sequence[Any]] = None) -> Iterator[SkewPoly]:
        """Every polynomial of degree <= degree with coefficients from pool"""
        if pool is None:
            pool = self.ring.elements()
        for coeffs in itertools.product(pool, repeat=degree + 1):
            yield SkewPoly(self, coeffs)

    def random_poly(self, rng: random.Random, max_degree: int) -> SkewPoly:
        degree = rng.randint(0, max_degree)
        return SkewPoly(self, [self.ring.random_element(rng) for _ in range(degree + 1)])

    def random_polys(self, seed: int, count: int, max_degree: int) -> List[SkewPoly]:
        rng = random.Random(seed)
        return [self.random_poly(rng, max_degree) for _ in range(count)]

    # Literals
    def format(self, p: SkewPoly) -> str:
        if p.is_zero():
            return "0"
        ring = self.ring
        terms = []
        for k, c in enumerate(p.coeffs):
            if c == ring.zero:
                continue
            text = "{" + ring.format(c) + "}"
            if k == 1:
                text += " x"
            elif k > 1:
                text += f" x^{k}"
            terms.append(text)
        return "+".join(terms)

    def _parse_term(self, term: str) -> Tuple[Any, int]:
        ring = self.ring
        if term.startswith("{"):
            depth = 0
            close = -1
            for pos, ch in enumerate(term):
                if ch in "([{<":
                    depth += 1
                elif ch in ")]}>":
                    depth -= 1
                    if depth == 0:
                        close = pos
                        break
            if close < 0 or term[close] != "}":
                raise LiteralError(f"unclosed coefficient brace in {term!r}")
            coef = ring.parse(term[1:close])
            rest = term[close + 1:].strip().lstrip("*").strip()
            if not rest:
                return coef, 0
            if rest == "x":
                return coef, 1
            if rest.startswith("x^") and rest[2:].isdigit():
                return coef, int(rest[2:])
            raise LiteralError(f"expected x or x^k after coefficient, got {rest!r}")
        match = _BARE_TERM.match(term)
        if match:
            coef_text = match.group("coef").strip()
            power = int(match.group("power")) if match.group("power") else 1
            return (ring.parse(coef_text) if coef_text else ring.one), power
        return ring.parse(term), 0

    def parse(self, text: str) -> SkewPoly:
        """Terms {elem} x^k joined by +; bare x, x^k and constants allowed"""
        text = text.strip()
        if not text:
            raise LiteralError("empty polynomial")
        result = self.zero
        for term in split_top(text, "+"):
            if not term:
                raise LiteralError(f"empty term in {text!r}")
            coef, power = self._parse_term(term)
            result = result + self.monomial(coef, power)
        return result


def skew_mul(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    return p.parent.mul(p, q)


def monomial_product(ext: OreExtension, a: Any, i: int, b: Any, j: int) -> SkewPoly:
    return ext.monomial_product(a, i, b, j)


def multipliers(ext: OreExtension, over: PrincipalKind, deg_bound: int) -> List[SkewPoly]:
    """r (pR) or r x^k with k <= deg_bound (pS), r over the whole ring"""
    powers = [0] if over == PrincipalKind.PR else range(deg_bound + 1)
    return [ext.monomial(r, k) for k in powers for r in ext.ring.elements()]


def check_scan_cap(ext: OreExtension, deg_bound: int, settings: Settings) -> None:
    ring = ext.ring
    if ring.kind != BackendKind.ENUMERABLE:
        raise BackendError(f"{ring.name} is Sampleable; Ore annihilators need a finite ring")
    if ring.size ** (deg_bound + 1) > settings.scan_cap:
        raise CapError(
            f"{ring.size}^{deg_bound + 1} polynomials exceed scan cap {settings.scan_cap}"
        )


def bounded_right_ann_in_ore(p: SkewPoly, over: PrincipalKind, deg_bound: int,
                             settings: Optional[Settings] = None) -> List[SkewPoly]:
    """Polynomials phi of degree <= deg_bound with p w phi = 0 for every multiplier w"""
    ext = p.parent
    settings = settings or ext.settings
    check_scan_cap(ext, deg_bound, settings)
    left_factors = [p * w for w in multipliers(ext, over, deg_bound)]
    left_factors = [f for f in dict.fromkeys(left_factors) if not f.is_zero()]
    found = [
        phi for phi in ext.polys_up_to(deg_bound)
        if all((f * phi).is_zero() for f in left_factors)
    ]
    logger.debug(f"Ore annihilator of {p} ({over.value}, deg<={deg_bound}): {len(found)} members")
    return found
