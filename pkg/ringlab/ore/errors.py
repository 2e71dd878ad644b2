"""Exception hierarchy for the Ore extension workbench"""

from typing import Any, Optional


class RingLabError(Exception):
    """Base class for every error raised by the library"""


class ValidationError(RingLabError):
    """A ring axiom or map law failed on a concrete witness"""

    def __init__(self, law: str, witness: Any):
        self.law = law
        self.witness = witness
        super().__init__(f"{law} fails at {witness}")


class SizeError(RingLabError):
    """Enumerable ring exceeds the configured size cap"""


class BackendError(RingLabError):
    """Operation not available for this ring backend"""


class CapError(RingLabError):
    """A combinatorial scan would exceed its configured cap"""


class MismatchError(RingLabError):
    """Operands live over different rings or quasi-derivations"""


class NotRightIdealError(RingLabError):
    """Set passed as a right ideal is not closed under addition or right multiplication"""


class LiteralError(RingLabError):
    """Element or polynomial literal does not match the expected grammar"""


class InvariantError(RingLabError):
    """A structural invariant that must always hold was violated"""


class HypothesisError(RingLabError):
    """A hypothesis required by a theorem-lab construction does not hold"""

    def __init__(self, hypothesis: str, verdict: Optional[Any] = None, detail: str = ""):
        self.hypothesis = hypothesis
        self.verdict = verdict
        message = f"hypothesis {hypothesis} does not hold"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
