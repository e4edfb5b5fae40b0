"""Exception types shared across the package."""


class HomAntiError(Exception):
    """Base class for input errors (as opposed to failed checks)."""


class ShapeError(HomAntiError, ValueError):
    """Tensor, matrix or vector dimensions do not fit together."""


class SymmetryError(HomAntiError, ValueError):
    """A structure tensor violates its required (anti)symmetry."""


class PreconditionError(HomAntiError, ValueError):
    """An operation was called on data that does not meet its contract."""


class NotMultiplicativeError(PreconditionError):
    """The twist maps are not an endomorphism of the algebra."""


class InadmissibleCochainError(PreconditionError):
    """A cochain does not commute with the twist maps."""
