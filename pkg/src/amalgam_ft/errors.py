"""Exception hierarchy shared by every module."""


class AmalgamError(Exception):
    """Base class for errors raised by amalgam_ft."""


class ModelError(AmalgamError, ValueError):
    """An input model or sequence fails validation."""


class NonMonotoneBreakpointsError(ModelError):
    pass


class NegativeBreakpointError(ModelError):
    pass


class LengthMismatchError(ModelError):
    pass


class EmptySequenceError(ModelError):
    pass


class PreconditionError(AmalgamError, ValueError):
    """A theorem precondition (continuity, nonzero input, ...) is violated."""


class DomainError(AmalgamError, ValueError):
    """Evaluation point lies outside the domain of the quantity.

    Raised e.g. for the Hilbert transform at a jump of ``g``, where the
    pointwise value diverges logarithmically.
    """


class ConvergenceError(AmalgamError, RuntimeError):
    """An iterative or accelerated summation failed to converge within its cap."""
