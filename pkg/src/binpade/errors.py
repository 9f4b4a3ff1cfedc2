"""Exception types and warning categories shared across the package."""


class PadeError(Exception):
    """Base class for package-specific errors."""


class PoleError(PadeError):
    """Evaluation requested at (or numerically too near) a pole."""


class TruncationError(PadeError):
    """A series operation needs more truncation order than is available."""


class InstanceError(PadeError, ValueError):
    """Exponent/degree data violate the validity constraints."""


class SingularSystemError(PadeError):
    """Pivoted elimination broke down; the defining linear system is singular."""


class ConvergenceError(PadeError):
    """A quadrature result failed its node-doubling stability check."""


class PoleSeparationError(PadeError):
    """Poles are too close together to isolate with small contour circles."""


class DomainError(PadeError, ValueError):
    """An evaluation point or parameter is outside the supported domain."""


class SizeError(PadeError):
    """Problem size exceeds a hard enumeration or memory bound."""


class ConditioningWarning(UserWarning):
    """Float-mode computation at a size where factorial ratios erode accuracy."""
