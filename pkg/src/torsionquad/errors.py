"""Exception hierarchy shared by all modules."""


class TorsionQuadError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(TorsionQuadError, ValueError):
    """Inputs have incompatible sizes."""


class InvalidInputError(TorsionQuadError, ValueError):
    """Input data violates a structural invariant."""


class PreconditionError(TorsionQuadError, ValueError):
    """An operation was called outside its domain."""


class SizeBoundError(TorsionQuadError):
    """A group is larger than the configured enumeration bound."""


class NoSolutionError(TorsionQuadError):
    """An affine problem has no solution."""
