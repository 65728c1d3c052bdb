"""Exception hierarchy. PreconditionError maps to CLI exit code 2,
NumericalError to exit code 4."""


class ShrinkLabError(Exception):
    """Base class for library errors."""


class PreconditionError(ShrinkLabError, ValueError):
    """Input violates a documented precondition."""


class OutOfRangeError(PreconditionError):
    """Parameter outside the sampled range of a profile."""


class ClearanceError(PreconditionError):
    """Barrier boundary clearance or containment requirement violated."""


class BracketError(PreconditionError):
    """Root bracket does not straddle the target."""


class NumericalError(ShrinkLabError, RuntimeError):
    """A numerical procedure failed to reach its goal."""


class IntegrationError(NumericalError):
    """ODE integration terminated before its goal."""


class EstimateError(NumericalError):
    """Asymptotic slope estimates disagree beyond the configured threshold."""


class NonMonotoneError(NumericalError):
    """The shooting map was observed to be non-monotone."""
