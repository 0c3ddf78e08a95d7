"""Exception types shared across the library."""

from __future__ import annotations


class TalphaError(Exception):
    """Base class for all library errors."""


class GraphFormatError(TalphaError):
    """Malformed graph/weight/decomposition file."""


class BadParams(TalphaError):
    """Invalid parameters to a generator or operation."""


class TooLarge(TalphaError):
    """Input exceeds the guard size for an exact computation."""


class NotAClique(TalphaError):
    """The given vertex set is not a clique."""


class DiamondPresent(TalphaError):
    """A neighborhood could not be partitioned into anticomplete cliques.

    Carries a diamond witness in ``self.witness``.
    """

    def __init__(self, witness, message: str = "diamond found"):
        super().__init__(message)
        self.witness = witness


class AmbiguousExtension(TalphaError):
    """A clique of size >= 2 has two distinct maximal extensions (diamond)."""

    def __init__(self, witness, message: str = "two maximal extensions"):
        super().__init__(message)
        self.witness = witness


class NotC4Free(TalphaError):
    def __init__(self, witness, message: str = "graph contains a C4"):
        super().__init__(message)
        self.witness = witness


class NotInClass(TalphaError):
    """Input is outside the graph class a routine requires."""

    def __init__(self, witness, message: str = "input outside required class"):
        super().__init__(message)
        self.witness = witness


class WitnessError(TalphaError):
    """A witness failed re-verification: hard internal error."""


class VertexBalanced(TalphaError):
    """Canonical star separation requested for a balanced vertex."""


class PropertyViolation(TalphaError):
    """A construction-time structural property failed."""


class NotSmooth(TalphaError):
    """Central bag requested for a non-smooth collection."""

    def __init__(self, report, message: str = "collection is not smooth"):
        super().__init__(message)
        self.report = report


class PreconditionViolated(TalphaError):
    def __init__(self, clause: str, message: str | None = None):
        super().__init__(message or f"precondition violated: {clause}")
        self.clause = clause


class AssertionFailed(TalphaError):
    """A structural claim the pipeline relies on failed on this input."""

    def __init__(self, claim: str, detail=None):
        super().__init__(f"assertion failed: {claim}")
        self.claim = claim
        self.detail = detail


class VerificationFailed(TalphaError):
    """A candidate output did not verify against its contract."""


class OracleFailure(TalphaError):
    """A separator oracle returned an unusable result."""


class CoverBudgetExceeded(TalphaError):
    """Clique-cover bookkeeping exceeded its budget during TD construction."""


class StateBlowup(TalphaError):
    """Dynamic program state count exceeded the per-bag guard."""


class NoConnector(TalphaError):
    """No connected subgraph meets all three neighborhoods."""


class NotFound(TalphaError):
    """A vertex guaranteed for in-class inputs was not found."""


class Unsolvable(TalphaError):
    """All separator routes, including the exhaustive fallback, failed."""


class MissingCutCliqueBag(TalphaError):
    """An atom decomposition lacks a bag containing its cut clique."""
