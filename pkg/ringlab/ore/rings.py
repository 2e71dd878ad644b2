"""Ring representations: table-backed finite rings and exact infinite rings"""

import itertools
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple

import structlog

from .config import Settings, get_settings
from .errors import BackendError, LiteralError, SizeError, ValidationError
from .models import BackendKind, RingKind, RingSpec

logger = structlog.get_logger(__name__)

PROBE_HEIGHT = 2

_OPENERS = "([{<"
_CLOSERS = ")]}>"


def split_top(text: str, sep: str) -> List[str]:
    """Split on sep where it is not nested inside any bracket pair"""
    parts: List[str] = []
    depth = 0
    current: List[str] = []
    for ch in text:
        if ch in _OPENERS:
            depth += 1
        elif ch in _CLOSERS:
            depth -= 1
            if depth < 0:
                raise LiteralError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise LiteralError(f"unbalanced brackets in {text!r}")
    parts.append("".join(current))
    return [p.strip() for p in parts]


def _unwrap(text: str, opener: str, closer: str, grammar: str) -> str:
    text = text.strip()
    if not (text.startswith(opener) and text.endswith(closer)):
        raise LiteralError(f"expected {grammar}, got {text!r}")
    return text[1:-1]


def small_rationals(height: int) -> List[Fraction]:
    """0, then p/q for 1 <= p, q <= height in both signs, deduplicated, in a fixed order"""
    values = [Fraction(0)]
    seen = {Fraction(0)}
    for den in range(1, height + 1):
        for num in range(1, height + 1):
            q = Fraction(num, den)
            if q in seen:
                continue
            seen.add(q)
            values.extend([q, -q])
    return values


def small_integers(height: int) -> List[int]:
    values = [0]
    for k in range(1, height + 1):
        values.extend([k, -k])
    return values


def _random_fraction(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


class Ring(ABC):
    """A unital associative ring with exact arithmetic"""

    kind: BackendKind = BackendKind.SAMPLEABLE

    def __init__(self, spec: Optional[RingSpec], height: int):
        self.spec = spec
        self.height = height
        self.name = spec.describe() if spec else "ring"
        # filled once by annihilators.idempotent_profile
        self.profile_cache: Optional[Any] = None

    # Arithmetic
    @property
    @abstractmethod
    def zero(self) -> Any:
        ...

    @property
    @abstractmethod
    def one(self) -> Any:
        ...

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any:
        ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any:
        ...

    @abstractmethod
    def neg(self, a: Any) -> Any:
        ...

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def total(self, values: Iterable[Any]) -> Any:
        result = self.zero
        for v in values:
            result = self.add(result, v)
        return result

    def product(self, values: Iterable[Any]) -> Any:
        result = self.one
        for v in values:
            result = self.mul(result, v)
        return result

    def canon(self, a: Any) -> Any:
        return a

    # Literals
    @abstractmethod
    def format(self, a: Any) -> str:
        ...

    @abstractmethod
    def parse(self, text: str) -> Any:
        ...

    def format_set(self, values: Iterable[Any]) -> str:
        return "{" + ", ".join(self.format(v) for v in values) + "}"

    # Structure access for named maps
    def value(self, a: Any) -> Any:
        """Constructor coordinates of an element"""
        return a

    def element(self, v: Any) -> Any:
        """Element with the given constructor coordinates"""
        return v

    @property
    def structure(self) -> "Ring":
        """Ring whose coordinates named maps act on"""
        return self

    # Carrier
    @property
    def is_finite(self) -> bool:
        return False

    @property
    def size(self) -> Optional[int]:
        return None

    def carrier(self) -> Iterator[Any]:
        raise BackendError(f"{self.name} has no finite carrier")

    def elements(self) -> List[Any]:
        if self.kind != BackendKind.ENUMERABLE:
            raise BackendError(f"{self.name} is Sampleable; use sample()")
        return list(self.carrier())

    def random_element(self, rng: random.Random) -> Any:
        raise BackendError(f"{self.name} cannot be sampled")

    def sample(self, seed: int, count: int) -> List[Any]:
        if self.kind == BackendKind.ENUMERABLE:
            raise BackendError(f"{self.name} is Enumerable; use elements()")
        rng = random.Random(seed)
        return [self.random_element(rng) for _ in range(count)]

    def small_elements(self, height: int) -> List[Any]:
        """Low-height elements in a fixed canonical order"""
        return list(self.carrier())

    def probe_elements(self) -> List[Any]:
        return self.small_elements(PROBE_HEIGHT)

    # Closed-form facts
    def is_commutative(self) -> bool:
        return False

    def closed_form_idempotents(self) -> Optional[List[Any]]:
        """Idempotents known analytically, for rings that cannot be scanned"""
        return None


# Constructor rings
class IntegersMod(Ring):
    """Z/nZ with residues 0..n-1"""

    kind = BackendKind.ENUMERABLE

    def __init__(self, n: int, spec: Optional[RingSpec] = None, height: int = 8):
        super().__init__(spec or RingSpec.zn(n), height)
        self.n = n

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.n

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.n

    def neg(self, a: int) -> int:
        return (-a) % self.n

    def format(self, a: int) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        try:
            return int(text.strip()) % self.n
        except ValueError:
            raise LiteralError(f"expected an integer residue for {self.name}, got {text!r}")

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def size(self) -> int:
        return self.n

    def carrier(self) -> Iterator[int]:
        return iter(range(self.n))

    def is_commutative(self) -> bool:
        return True


class ConstantDiagonalTriangular(Ring):
    """Pairs (a,b) standing for [[a,b],[0,a]] over a base ring"""

    def __init__(self, base: Ring, spec: RingSpec, height: int):
        super().__init__(spec, height)
        self.base = base
        self.kind = base.kind

    @property
    def zero(self) -> Tuple[Any, Any]:
        return (self.base.zero, self.base.zero)

    @property
    def one(self) -> Tuple[Any, Any]:
        return (self.base.one, self.base.zero)

    def add(self, x, y):
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]))

    def mul(self, x, y):
        b = self.base
        return (b.mul(x[0], y[0]), b.add(b.mul(x[0], y[1]), b.mul(x[1], y[0])))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def format(self, x) -> str:
        return f"({self.base.format(x[0])},{self.base.format(x[1])})"

    def parse(self, text: str):
        parts = split_top(_unwrap(text, "(", ")", "(a,b)"), ",")
        if len(parts) != 2:
            raise LiteralError(f"expected (a,b) for {self.name}, got {text!r}")
        return (self.base.parse(parts[0]), self.base.parse(parts[1]))

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def size(self) -> Optional[int]:
        return self.base.size ** 2 if self.base.is_finite else None

    def carrier(self):
        return itertools.product(self.base.carrier(), repeat=2)

    def random_element(self, rng):
        return (self.base.random_element(rng), self.base.random_element(rng))

    def small_elements(self, height: int):
        return list(itertools.product(self.base.small_elements(height), repeat=2))

    def is_commutative(self) -> bool:
        return self.base.is_commutative()


class UpperTriangular(Ring):
    """Triples (a,b,d) standing for [[a,b],[0,d]] over a base ring"""

    def __init__(self, base: Ring, spec: RingSpec, height: int):
        super().__init__(spec, height)
        self.base = base
        self.kind = base.kind

    @property
    def zero(self):
        z = self.base.zero
        return (z, z, z)

    @property
    def one(self):
        return (self.base.one, self.base.zero, self.base.one)

    def add(self, x, y):
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]), b.add(x[2], y[2]))

    def mul(self, x, y):
        b = self.base
        return (
            b.mul(x[0], y[0]),
            b.add(b.mul(x[0], y[1]), b.mul(x[1], y[2])),
            b.mul(x[2], y[2]),
        )

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def format(self, x) -> str:
        return "(" + ",".join(self.base.format(c) for c in x) + ")"

    def parse(self, text: str):
        parts = split_top(_unwrap(text, "(", ")", "(a,b,d)"), ",")
        if len(parts) != 3:
            raise LiteralError(f"expected (a,b,d) for {self.name}, got {text!r}")
        return tuple(self.base.parse(p) for p in parts)

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def size(self) -> Optional[int]:
        return self.base.size ** 3 if self.base.is_finite else None

    def carrier(self):
        return itertools.product(self.base.carrier(), repeat=3)

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(3))

    def small_elements(self, height: int):
        return list(itertools.product(self.base.small_elements(height), repeat=3))


class DirectSum(Ring):
    """Pairs (l, r) with componentwise operations"""

    def __init__(self, left: Ring, right: Ring, spec: RingSpec, height: int):
        super().__init__(spec, height)
        self.left = left
        self.right = right
        both_finite = left.is_finite and right.is_finite
        self.kind = BackendKind.ENUMERABLE if both_finite else BackendKind.SAMPLEABLE

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @property
    def one(self):
        return (self.left.one, self.right.one)

    def add(self, x, y):
        return (self.left.add(x[0], y[0]), self.right.add(x[1], y[1]))

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def neg(self, x):
        return (self.left.neg(x[0]), self.right.neg(x[1]))

    def canon(self, x):
        return (self.left.canon(x[0]), self.right.canon(x[1]))

    def format(self, x) -> str:
        return f"<{self.left.format(x[0])}|{self.right.format(x[1])}>"

    def parse(self, text: str):
        parts = split_top(_unwrap(text, "<", ">", "<left|right>"), "|")
        if len(parts) != 2:
            raise LiteralError(f"expected <left|right> for {self.name}, got {text!r}")
        return (self.left.parse(parts[0]), self.right.parse(parts[1]))

    @property
    def is_finite(self) -> bool:
        return self.left.is_finite and self.right.is_finite

    @property
    def size(self) -> Optional[int]:
        return self.left.size * self.right.size if self.is_finite else None

    def carrier(self):
        return itertools.product(self.left.carrier(), self.right.carrier())

    def random_element(self, rng):
        return (self.left.random_element(rng), self.right.random_element(rng))

    def small_elements(self, height: int):
        return list(itertools.product(
            self.left.small_elements(height), self.right.small_elements(height)
        ))

    def is_commutative(self) -> bool:
        return self.left.is_commutative() and self.right.is_commutative()


class PolynomialRing(Ring):
    """Commuting polynomials over an Enumerable base, coefficients trimmed"""

    def __init__(self, base: Ring, var: str, spec: RingSpec, height: int):
        super().__init__(spec, height)
        if base.kind != BackendKind.ENUMERABLE:
            raise BackendError("polynomial rings need an Enumerable coefficient ring")
        self.base = base
        self.var = var

    def _trim(self, coeffs: Sequence[Any]) -> Tuple[Any, ...]:
        coeffs = list(coeffs)
        z = self.base.zero
        while coeffs and coeffs[-1] == z:
            coeffs.pop()
        return tuple(coeffs)

    @property
    def zero(self):
        return ()

    @property
    def one(self):
        return self._trim([self.base.one])

    def constant(self, c: Any) -> Tuple[Any, ...]:
        return self._trim([c])

    def add(self, f, g):
        b = self.base
        n = max(len(f), len(g))
        return self._trim([
            b.add(f[k] if k < len(f) else b.zero, g[k] if k < len(g) else b.zero)
            for k in range(n)
        ])

    def mul(self, f, g):
        if not f or not g:
            return ()
        b = self.base
        out = [b.zero] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi == b.zero:
                continue
            for j, gj in enumerate(g):
                out[i + j] = b.add(out[i + j], b.mul(fi, gj))
        return self._trim(out)

    def neg(self, f):
        return tuple(self.base.neg(c) for c in f)

    def canon(self, f):
        return self._trim(f)

    def format(self, f) -> str:
        b = self.base
        terms = []
        for k, c in enumerate(f):
            if c == b.zero:
                continue
            mono = "" if k == 0 else self.var if k == 1 else f"{self.var}^{k}"
            if k == 0:
                terms.append(b.format(c))
            elif c == b.one:
                terms.append(mono)
            else:
                terms.append(f"{b.format(c)}*{mono}")
        return "+".join(terms) or "0"

    def parse(self, text: str):
        text = text.strip()
        if text.startswith("["):
            body = _unwrap(text, "[", "]", "[c0,c1,...]")
            if not body.strip():
                return ()
            return self._trim([self.base.parse(p) for p in split_top(body, ",")])
        coeffs: dict = {}
        for term in split_top(text, "+"):
            if not term:
                raise LiteralError(f"empty term in {text!r}")
            coef_text, power = term, 0
            mono = term
            if "*" in term:
                coef_text, mono = term.rsplit("*", 1)
            else:
                coef_text = ""
            if mono == self.var:
                power = 1
            elif mono.startswith(self.var + "^"):
                try:
                    power = int(mono[len(self.var) + 1:])
                except ValueError:
                    raise LiteralError(f"bad exponent in {term!r}")
            elif coef_text:
                raise LiteralError(f"expected c*{self.var}^k, got {term!r}")
            else:
                coef_text, power = term, 0
            coef = self.base.parse(coef_text) if coef_text else self.base.one
            coeffs[power] = self.base.add(coeffs.get(power, self.base.zero), coef)
        top = max(coeffs) if coeffs else -1
        return self._trim([coeffs.get(k, self.base.zero) for k in range(top + 1)])

    def random_element(self, rng):
        length = rng.randint(0, self.height + 1)
        size = self.base.size
        return self._trim([rng.randrange(size) for _ in range(length)])

    def small_elements(self, height: int):
        """Every polynomial of degree below height, counting in base |R| little-endian"""
        base_elems = self.base.elements()
        size = len(base_elems)
        out = []
        for code in range(size ** height):
            digits = []
            for _ in range(height):
                code, d = divmod(code, size)
                digits.append(base_elems[d])
            out.append(self._trim(digits))
        return out

    def is_commutative(self) -> bool:
        return self.base.is_commutative()

    def closed_form_idempotents(self) -> Optional[List[Any]]:
        # idempotents of R[t] are those of R when R is commutative
        if not self.base.is_commutative():
            return None
        b = self.base
        return [self.constant(e) for e in b.elements() if b.mul(e, e) == e]


class GaussianRationals(Ring):
    """Q(i) as pairs of Fractions (re, im)"""

    def __init__(self, spec: RingSpec, height: int):
        super().__init__(spec, height)

    @property
    def zero(self):
        return (Fraction(0), Fraction(0))

    @property
    def one(self):
        return (Fraction(1), Fraction(0))

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def mul(self, x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def neg(self, x):
        return (-x[0], -x[1])

    def canon(self, x):
        return (Fraction(x[0]), Fraction(x[1]))

    def format(self, x) -> str:
        re, im = x
        if im == 0:
            return str(re)
        magnitude = "i" if abs(im) == 1 else f"{abs(im)} i"
        if re == 0:
            return magnitude if im > 0 else f"-{magnitude}"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{magnitude}"

    def parse(self, text: str):
        s = text.replace(" ", "")
        try:
            if not s.endswith("i"):
                return (Fraction(s), Fraction(0))
            body = s[:-1].rstrip("*")
            cut = max(body.rfind("+"), body.rfind("-"))
            if cut > 0:
                re_text, im_text = body[:cut], body[cut:]
            else:
                re_text, im_text = "0", body
            if im_text in ("", "+"):
                im_text = "1"
            elif im_text == "-":
                im_text = "-1"
            return (Fraction(re_text), Fraction(im_text))
        except (ValueError, ZeroDivisionError):
            raise LiteralError(f"expected p/q+r/s i for {self.name}, got {text!r}")

    def random_element(self, rng):
        return (_random_fraction(rng, self.height), _random_fraction(rng, self.height))

    def small_elements(self, height: int):
        values = small_rationals(height)
        return list(itertools.product(values, values))

    def is_commutative(self) -> bool:
        return True

    def closed_form_idempotents(self) -> Optional[List[Any]]:
        return [self.zero, self.one]


class IntRationalTriangular(Ring):
    """Pairs (a,t) with a in Z, t in Q, standing for [[a,t],[0,a]]"""

    def __init__(self, spec: RingSpec, height: int):
        super().__init__(spec, height)

    @property
    def zero(self):
        return (0, Fraction(0))

    @property
    def one(self):
        return (1, Fraction(0))

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def mul(self, x, y):
        return (x[0] * y[0], x[0] * y[1] + x[1] * y[0])

    def neg(self, x):
        return (-x[0], -x[1])

    def canon(self, x):
        return (int(x[0]), Fraction(x[1]))

    def format(self, x) -> str:
        return f"({x[0]},{x[1]})"

    def parse(self, text: str):
        parts = split_top(_unwrap(text, "(", ")", "(a,t)"), ",")
        if len(parts) != 2:
            raise LiteralError(f"expected (a,t) for {self.name}, got {text!r}")
        try:
            return (int(parts[0]), Fraction(parts[1]))
        except (ValueError, ZeroDivisionError):
            raise LiteralError(f"expected integer a and rational t, got {text!r}")

    def random_element(self, rng):
        return (rng.randint(-self.height, self.height), _random_fraction(rng, self.height))

    def small_elements(self, height: int):
        return list(itertools.product(small_integers(height), small_rationals(height)))

    def is_commutative(self) -> bool:
        return True

    def closed_form_idempotents(self) -> Optional[List[Any]]:
        # (a,t)^2 = (a,t) forces a in {0,1}, then t = 2at gives t = 0
        return [self.zero, self.one]


class FiniteRing(Ring):
    """Enumerable ring backed by addition and multiplication tables over indices"""

    kind = BackendKind.ENUMERABLE

    def __init__(
        self,
        add_table: List[List[int]],
        mul_table: List[List[int]],
        spec: Optional[RingSpec] = None,
        labels: Optional[List[Any]] = None,
        structure: Optional[Ring] = None,
        height: int = 8,
    ):
        super().__init__(spec, height)
        self._add = add_table
        self._mul = mul_table
        self._n = len(add_table)
        self._labels = labels if labels is not None else list(range(self._n))
        self._index = {v: i for i, v in enumerate(self._labels)}
        self._structure = structure
        if any(self._add[0][x] != x or self._add[x][0] != x for x in range(self._n)):
            raise ValidationError("additive-identity", {"expected_zero": "#0"})
        self._one = self._find_one()
        self._neg = self._build_negation()
        self._commutative: Optional[bool] = None

    @classmethod
    def materialize(cls, structure: Ring, spec: RingSpec, height: int) -> "FiniteRing":
        """Tabulate a finite constructor ring, elements in lexicographic coordinate order"""
        labels = list(structure.carrier())
        index = {v: i for i, v in enumerate(labels)}
        add_table = [[index[structure.add(x, y)] for y in labels] for x in labels]
        mul_table = [[index[structure.mul(x, y)] for y in labels] for x in labels]
        return cls(add_table, mul_table, spec=spec, labels=labels, structure=structure, height=height)

    def _find_one(self) -> int:
        n = self._n
        for u in range(n):
            if all(self._mul[u][x] == x and self._mul[x][u] == x for x in range(n)):
                return u
        raise ValidationError("unity", {"reason": "no two-sided multiplicative identity"})

    def _build_negation(self) -> List[int]:
        neg = []
        for x in range(self._n):
            inverse = next((y for y in range(self._n) if self._add[x][y] == 0), None)
            if inverse is None:
                raise ValidationError("additive-inverse", {"a": f"#{x}"})
            neg.append(inverse)
        return neg

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self._one

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def value(self, a: int) -> Any:
        return self._labels[a]

    def element(self, v: Any) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise LiteralError(f"{v!r} is not an element of {self.name}")

    @property
    def structure(self) -> Ring:
        return self._structure if self._structure is not None else self

    def format(self, a: int) -> str:
        if self._structure is None:
            return f"#{a}"
        return self._structure.format(self._labels[a])

    def parse(self, text: str) -> int:
        text = text.strip()
        if text.startswith("#"):
            try:
                idx = int(text[1:])
            except ValueError:
                raise LiteralError(f"expected #index, got {text!r}")
            if not 0 <= idx < self._n:
                raise LiteralError(f"index {idx} outside 0..{self._n - 1}")
            return idx
        if self._structure is None:
            try:
                return self.parse(f"#{int(text)}")
            except ValueError:
                raise LiteralError(f"expected #index for {self.name}, got {text!r}")
        return self.element(self._structure.canon(self._structure.parse(text)))

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def size(self) -> int:
        return self._n

    def carrier(self) -> Iterator[int]:
        return iter(range(self._n))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self._n)

    def is_commutative(self) -> bool:
        if self._commutative is None:
            n = self._n
            self._commutative = all(
                self._mul[a][b] == self._mul[b][a] for a in range(n) for b in range(a + 1, n)
            )
        return self._commutative


# Construction and validation
def _construct(spec: RingSpec, settings: Settings) -> Ring:
    height = settings.sampler_height
    if spec.kind == RingKind.TABLES:
        return FiniteRing(spec.add, spec.mul, spec=spec, height=height)
    if spec.kind == RingKind.ZN:
        structure: Ring = IntegersMod(spec.n, spec, height)
    elif spec.kind == RingKind.TRI2:
        structure = ConstantDiagonalTriangular(_construct(spec.base, settings), spec, height)
    elif spec.kind == RingKind.UT2:
        structure = UpperTriangular(_construct(spec.base, settings), spec, height)
    elif spec.kind == RingKind.SUM:
        structure = DirectSum(
            _construct(spec.left, settings), _construct(spec.right, settings), spec, height
        )
    elif spec.kind == RingKind.POLY:
        structure = PolynomialRing(_construct(spec.base, settings), spec.var, spec, height)
    elif spec.kind == RingKind.GAUSS:
        structure = GaussianRationals(spec, height)
    else:
        structure = IntRationalTriangular(spec, height)

    if not structure.is_finite:
        return structure
    if structure.size > settings.enumerable_size_cap:
        raise SizeError(
            f"{spec.describe()} has {structure.size} elements, cap is {settings.enumerable_size_cap}"
        )
    return FiniteRing.materialize(structure, spec, height)


def _axiom_triples(ring: Ring, settings: Settings) -> Iterator[Tuple[Any, Any, Any]]:
    if ring.kind == BackendKind.ENUMERABLE and ring.size ** 3 <= settings.scan_cap:
        elems = ring.elements()
        return itertools.product(elems, repeat=3)
    if ring.kind == BackendKind.ENUMERABLE:
        logger.warning(f"{ring.name}: {ring.size} elements, spot-checking axioms on samples")
        rng = random.Random(settings.default_seed)
        return iter([
            tuple(ring.random_element(rng) for _ in range(3)) for _ in range(settings.law_samples)
        ])
    probes = ring.probe_elements()[:16]
    sampled = ring.sample(settings.default_seed, 3 * settings.law_samples)
    triples = list(itertools.product(probes[:6], repeat=3))
    triples += [tuple(sampled[3 * k:3 * k + 3]) for k in range(settings.law_samples)]
    return iter(triples)


def validate_ring(ring: Ring, settings: Optional[Settings] = None) -> None:
    """Check the unital ring axioms, exhaustively when affordable"""
    settings = settings or get_settings()
    if ring.one == ring.zero:
        raise ValidationError("nontrivial", {"reason": "1 = 0"})
    f = ring.format
    for a, b, c in _axiom_triples(ring, settings):
        witness = {"a": f(a), "b": f(b), "c": f(c)}
        if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)):
            raise ValidationError("additive-associativity", witness)
        if ring.add(a, b) != ring.add(b, a):
            raise ValidationError("additive-commutativity", witness)
        if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)):
            raise ValidationError("associativity", witness)
        if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)):
            raise ValidationError("left-distributivity", witness)
        if ring.mul(ring.add(b, c), a) != ring.add(ring.mul(b, a), ring.mul(c, a)):
            raise ValidationError("right-distributivity", witness)
        if ring.add(a, ring.neg(a)) != ring.zero or ring.add(ring.zero, a) != a:
            raise ValidationError("additive-inverse", witness)
        if ring.mul(ring.one, a) != a or ring.mul(a, ring.one) != a:
            raise ValidationError("unity", witness)


def build_ring(spec: RingSpec, settings: Optional[Settings] = None) -> Ring:
    """Construct and validate the ring a descriptor names"""
    settings = settings or get_settings()
    ring = _construct(spec, settings)
    validate_ring(ring, settings)
    logger.info(f"Ring built: {ring.name} ({ring.kind.value}, size={ring.size})")
    return ring


def elements(ring: Ring) -> List[Any]:
    """All elements of an Enumerable ring, zero first"""
    return ring.elements()


def sample(ring: Ring, seed: int, count: int) -> List[Any]:
    """Deterministic pseudo-random elements of a Sampleable ring"""
    return ring.sample(seed, count)


def scan_set(ring: Ring, seed: int, count: int, hints: Sequence[Any] = ()) -> List[Any]:
    """Hints, then every element (Enumerable) or probes followed by samples (Sampleable)"""
    if ring.kind == BackendKind.ENUMERABLE:
        base = ring.elements()
    else:
        base = ring.probe_elements() + ring.sample(seed, count)
    return list(hints) + base
