"""Exception types shared across the package."""

from __future__ import annotations


class SipminkError(Exception):
    """Base class for all package errors."""


class DimensionError(SipminkError):
    """Operands have incompatible dimensions."""


class DomainError(SipminkError):
    """Input lies outside the domain of the operation."""


class NumericalError(SipminkError):
    """A numerical evaluation produced a non-finite or inconsistent value."""


class ConvergenceError(SipminkError):
    """An iterative procedure stopped before reaching its tolerance.

    Carries the best point and value found so far.
    """

    def __init__(self, message, best_point=None, best_value=None):
        super().__init__(message)
        self.best_point = best_point
        self.best_value = best_value


class UnsupportedError(SipminkError):
    """The operation is not defined for this space or variant."""


class DegenerateError(SipminkError):
    """A product functional vanished identically where nondegeneracy is required."""


class NeutralPivotError(SipminkError):
    """Orthogonalization hit a neutral pivot. ``index`` is the 1-based position."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class ConstantSignError(SipminkError):
    """Sampled scalar squares change sign; the subspace is not definite."""


class TangentError(SipminkError):
    """A vector is not in the tangent space it was claimed to lie in."""


class PathError(SipminkError):
    """A discretized curve left the space-like-velocity regime."""


class SingularMapError(SipminkError):
    """A linear map required to be invertible is singular."""


class UsageError(SipminkError):
    """Bad command-line arguments or configuration.

    ``line`` and ``column`` are set for config-file parse errors.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column
