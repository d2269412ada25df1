"""Exception hierarchy shared across the package."""


class ZerocorrError(Exception):
    """Base class for all package errors."""


class InputError(ZerocorrError):
    """Invalid user-supplied value (non-finite input, bad grid, ...)."""


class DomainError(ZerocorrError):
    """Point outside the mathematical domain of an operation."""


class DimensionError(ZerocorrError):
    """Inconsistent dimensions, e.g. a configuration larger than the degree."""


class ModelMismatchError(ZerocorrError):
    """A closed form was asked for a coefficient model it does not cover."""


class ConjugateClosureError(ZerocorrError):
    """A tuple that should be closed under conjugation is not."""


class BackendUnavailableError(ZerocorrError):
    """The requested integration backend cannot handle this problem size."""


class DegenerateProposalError(ZerocorrError):
    """Monte Carlo proposal produced no usable samples."""


class UnsupportedDensityError(ZerocorrError):
    """Operation not defined for this density kind."""


class GeometryError(ZerocorrError):
    """Degenerate feasible region (unbounded coordinate and the like)."""
