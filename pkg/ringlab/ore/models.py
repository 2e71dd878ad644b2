"""Data models for the Ore extension workbench"""

from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BackendKind(str, Enum):
    """Ring carrier backends"""
    ENUMERABLE = "enumerable"
    SAMPLEABLE = "sampleable"


class RingKind(str, Enum):
    """Ring constructors"""
    ZN = "zn"
    TABLES = "tables"
    TRI2 = "tri2"
    UT2 = "ut2"
    SUM = "sum"
    POLY = "poly"
    GAUSS = "gauss"
    INT_RAT_TRI = "int_rat_tri"


class MapKind(str, Enum):
    """Endomorphism and sigma-derivation descriptors"""
    IDENTITY = "identity"
    TABLE = "table"
    EVAL0 = "eval0"
    NEGATE_OFFDIAG = "negate_offdiag"
    HALVE_OFFDIAG = "halve_offdiag"
    CONJ = "conj"
    SQUARE_VAR = "square_var"
    COMPONENTWISE = "componentwise"
    ZERO = "zero"
    INNER = "inner"
    CONJ_DIFF = "conj_diff"


class VerdictKind(str, Enum):
    """Outcome of a property check"""
    HOLDS = "holds"
    HOLDS_BOUNDED = "holds_bounded"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class Side(str, Enum):
    """Annihilator side"""
    RIGHT = "right"
    LEFT = "left"


class AnnSource(str, Enum):
    """What an annihilator was taken of"""
    ELEMENT = "element"
    SET = "set"
    PRINCIPAL = "principal"


class ClosureKind(str, Enum):
    """Generators fed into the annihilator intersection closure"""
    BAER = "baer"
    QUASI_BAER = "quasi_baer"


class PrincipalKind(str, Enum):
    """Multiplier set used for annihilators inside the Ore extension"""
    PS = "pS"
    PR = "pR"


# Descriptor Models
class RingSpec(BaseModel):
    """Constructor descriptor for a ring"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: RingKind
    n: Optional[int] = None
    add: Optional[List[List[int]]] = None
    mul: Optional[List[List[int]]] = None
    base: Optional["RingSpec"] = None
    left: Optional["RingSpec"] = None
    right: Optional["RingSpec"] = None
    var: Optional[str] = None

    @model_validator(mode="after")
    def check_well_formed(self) -> "RingSpec":
        """Reject descriptors whose parameters do not fit their kind"""
        if self.kind == RingKind.ZN and (self.n is None or self.n < 2):
            raise ValueError("zn(n) needs n >= 2")
        if self.kind == RingKind.TABLES:
            if not self.add or not self.mul:
                raise ValueError("tables needs add and mul")
            size = len(self.add)
            for table in (self.add, self.mul):
                if len(table) != size or any(len(row) != size for row in table):
                    raise ValueError("tables must be square and of equal dimension")
                if any(not 0 <= v < size for row in table for v in row):
                    raise ValueError("table entries must index the carrier")
        if self.kind in (RingKind.TRI2, RingKind.UT2, RingKind.POLY) and self.base is None:
            raise ValueError(f"{self.kind.value} needs a base ring")
        if self.kind == RingKind.SUM and (self.left is None or self.right is None):
            raise ValueError("sum needs left and right rings")
        if self.kind == RingKind.POLY and not (self.var or "").isalpha():
            raise ValueError("poly needs an alphabetic variable name")
        return self

    def describe(self) -> str:
        """Compact constructor expression, e.g. tri2(zn(4))"""
        if self.kind == RingKind.ZN:
            return f"zn({self.n})"
        if self.kind == RingKind.TABLES:
            return f"tables({len(self.add or [])})"
        if self.kind in (RingKind.TRI2, RingKind.UT2):
            return f"{self.kind.value}({self.base.describe()})"
        if self.kind == RingKind.POLY:
            return f"poly({self.base.describe()},{self.var})"
        if self.kind == RingKind.SUM:
            return f"sum({self.left.describe()},{self.right.describe()})"
        return self.kind.value

    @classmethod
    def zn(cls, n: int) -> "RingSpec":
        return cls(kind=RingKind.ZN, n=n)

    @classmethod
    def tables(cls, add: List[List[int]], mul: List[List[int]]) -> "RingSpec":
        return cls(kind=RingKind.TABLES, add=add, mul=mul)

    @classmethod
    def tri2(cls, base: "RingSpec") -> "RingSpec":
        return cls(kind=RingKind.TRI2, base=base)

    @classmethod
    def ut2(cls, base: "RingSpec") -> "RingSpec":
        return cls(kind=RingKind.UT2, base=base)

    @classmethod
    def sum(cls, left: "RingSpec", right: "RingSpec") -> "RingSpec":
        return cls(kind=RingKind.SUM, left=left, right=right)

    @classmethod
    def poly(cls, base: "RingSpec", var: str) -> "RingSpec":
        return cls(kind=RingKind.POLY, base=base, var=var)

    @classmethod
    def gauss(cls) -> "RingSpec":
        return cls(kind=RingKind.GAUSS)

    @classmethod
    def int_rat_tri(cls) -> "RingSpec":
        return cls(kind=RingKind.INT_RAT_TRI)


class MapSpec(BaseModel):
    """Descriptor for an endomorphism or a sigma-derivation"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: MapKind
    images: Optional[List[int]] = None
    element: Optional[str] = None
    left: Optional["MapSpec"] = None
    right: Optional["MapSpec"] = None

    @model_validator(mode="after")
    def check_well_formed(self) -> "MapSpec":
        if self.kind == MapKind.TABLE and self.images is None:
            raise ValueError("table map needs images")
        if self.kind == MapKind.INNER and not self.element:
            raise ValueError("inner derivation needs an element literal")
        if self.kind == MapKind.COMPONENTWISE and (self.left is None or self.right is None):
            raise ValueError("componentwise map needs left and right maps")
        return self

    def describe(self) -> str:
        if self.kind == MapKind.TABLE:
            return f"table({self.images})"
        if self.kind == MapKind.INNER:
            return f"inner({self.element})"
        if self.kind == MapKind.COMPONENTWISE:
            return f"componentwise({self.left.describe()},{self.right.describe()})"
        return self.kind.value


IDENTITY_MAP = MapSpec(kind=MapKind.IDENTITY)
ZERO_MAP = MapSpec(kind=MapKind.ZERO)


class RingFile(BaseModel):
    """Ring-definition document: a ring plus its quasi-derivation"""
    model_config = ConfigDict(extra="forbid")

    ring: RingSpec
    sigma: MapSpec = IDENTITY_MAP
    delta: MapSpec = ZERO_MAP


# Verdict Models
class Verdict(BaseModel):
    """Outcome of a property check with its evidence"""
    property: str
    kind: VerdictKind
    witness: Optional[Dict[str, str]] = None
    bounds: Dict[str, int] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        """Holds or HoldsBounded"""
        return self.kind in (VerdictKind.HOLDS, VerdictKind.HOLDS_BOUNDED)

    @property
    def failed(self) -> bool:
        return self.kind == VerdictKind.FAILS

    def label(self) -> str:
        """Short human rendering, e.g. FAILS (a=(2,0))"""
        text = self.kind.value.upper().replace("_", " ")
        if self.witness:
            shown = ", ".join(f"{k}={v}" for k, v in self.witness.items())
            text = f"{text} ({shown})"
        elif self.bounds and self.kind != VerdictKind.HOLDS:
            shown = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
            text = f"{text} [{shown}]"
        if self.vacuous:
            text = f"{text} [vacuous]"
        return text


# Annihilator Models
class AnnSet(BaseModel):
    """Exact annihilator of a generator inside an Enumerable ring"""
    model_config = ConfigDict(frozen=True)

    side: Side = Side.RIGHT
    source: AnnSource
    generators: tuple = ()
    members: FrozenSet[int]

    def __len__(self) -> int:
        return len(self.members)


class IdempotentProfile(BaseModel):
    """Idempotents of a ring, split by semicentrality"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    idempotents: FrozenSet[Any]
    left_semicentral: FrozenSet[Any]
    right_semicentral: FrozenSet[Any]
    central: FrozenSet[Any]
    closed_form: bool = False


# Theorem Lab Models
class PqBaerWitness(BaseModel):
    """Idempotent witness for r_S(p(x)S) = eS at bounded degree"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: str
    coefficient_idempotents: List[str]
    e: str
    claim1: Verdict
    claim1_random: Verdict
    claim2: Verdict
    conclusion: Verdict
    cascade: Optional[Verdict] = None

    @property
    def passed(self) -> bool:
        checks = [self.claim1, self.claim1_random, self.claim2, self.conclusion]
        if self.cascade is not None:
            checks.append(self.cascade)
        return all(v.passed for v in checks)


class HypothesisReport(BaseModel):
    """Hypothesis table plus both theorem directions for one ring"""
    entry: str
    rows: Dict[str, Verdict] = Field(default_factory=dict)
    branches: Dict[str, bool] = Field(default_factory=dict)
    forward: Verdict
    backward: Verdict
    theorem_asserted: bool = False
    notes: List[str] = Field(default_factory=list)


# Catalog Models
class Expectation(BaseModel):
    """Expected Verdict kind for one property of a catalog entry"""
    property: str
    expected: VerdictKind
    anchor: str
    witness: Optional[Dict[str, str]] = None
    component: Optional[str] = None


class CatalogEntry(BaseModel):
    """Named example ring with its maps and regression expectations"""
    model_config = ConfigDict(frozen=True)

    name: str
    description: str = ""
    ring: RingSpec
    sigma: MapSpec = IDENTITY_MAP
    delta: MapSpec = ZERO_MAP
    hints: Dict[str, List[str]] = Field(default_factory=dict)
    expectations: List[Expectation] = Field(default_factory=list)
    roundtrip: bool = True


class ExpectationResult(BaseModel):
    """Expectation paired with the Verdict actually produced"""
    expectation: Expectation
    actual: Verdict
    met: bool


class EntryReport(BaseModel):
    """Result of running one catalog entry"""
    name: str
    results: List[ExpectationResult] = Field(default_factory=list)
    roundtrip: Optional[HypothesisReport] = None

    @property
    def mismatches(self) -> List[ExpectationResult]:
        return [r for r in self.results if not r.met]


class Report(BaseModel):
    """Everything a CLI command prints, in one serializable record"""
    command: str
    subject: str
    verdicts: List[Verdict] = Field(default_factory=list)
    profile: Optional[Dict[str, List[str]]] = None
    entries: List[EntryReport] = Field(default_factory=list)
    witness: Optional[PqBaerWitness] = None
    lines: List[str] = Field(default_factory=list)
    exit_code: int = 0
