"""Exception hierarchy shared by every module."""


class CCFCError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(CCFCError, ValueError):
    pass


class InvalidEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class BadLandmark(GraphError):
    pass


class BadVertex(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class BadOffset(GraphError):
    pass


class BadSpec(CCFCError, ValueError):
    pass


class BadParams(CCFCError, ValueError):
    pass


class BudgetExceeded(CCFCError, RuntimeError):
    """Raised when an explicit search budget runs out before a decision."""

    def __init__(self, message: str, steps: int):
        super().__init__(message)
        self.steps = steps


class PartialColoring(CCFCError, ValueError):
    pass


class InconsistentPrecoloring(CCFCError, ValueError):
    pass


class NotCoprime(CCFCError, ValueError):
    pass


class InvalidInput(CCFCError, ValueError):
    pass


class ModulusMismatch(CCFCError, ValueError):
    pass


class HypothesisViolated(CCFCError, ValueError):
    """The inputs fall outside the range where a constructive guarantee holds."""


class ConstructionError(CCFCError, RuntimeError):
    """A constructive routine failed inside its guaranteed range (a bug)."""


class UnknownSuite(CCFCError, KeyError):
    pass
