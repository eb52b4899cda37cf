"""Exception types shared across the package."""


class OpspaceError(Exception):
    """Base class for all library errors."""


class InputError(OpspaceError, ValueError):
    """Invalid user input: non-finite entries, bad shapes, bad parameters."""


class DimensionMismatchError(InputError):
    """Operands have incompatible dimensions."""


class ResourceLimitError(OpspaceError):
    """A requested computation exceeds the configured size caps."""


class NearSingularError(OpspaceError):
    """A matrix required to be positive definite is numerically singular."""


class UnsupportedStructureError(OpspaceError):
    """No closed form is available for the requested structure/level."""


class InfeasibleRankError(OpspaceError):
    """Requested representation rank is below the rank of the coefficients."""
