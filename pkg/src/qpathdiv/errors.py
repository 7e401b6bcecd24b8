"""Exception types shared across the package.

Error messages carry the name of the violated invariant and the measured
defect, so callers (and the CLI) can report failures without re-deriving
them.
"""

from __future__ import annotations


class QPathDivError(Exception):
    """Base class for all library errors."""


class ValidationError(QPathDivError):
    """An input violated a structural invariant."""

    def __init__(self, message: str, defect: float | None = None):
        if defect is not None:
            message = f"{message} (measured defect {defect:.6e})"
        super().__init__(message)
        self.defect = defect


class NotHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class NotFullRank(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidShape(ValidationError):
    pass


class InvalidDistribution(ValidationError):
    pass


class SupportViolation(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class PovmIncomplete(ValidationError):
    pass


class NotInRange(ValidationError):
    """A dual coordinate lies outside the reachable gradient range."""


class NumericalError(QPathDivError):
    """A computation failed to meet its accuracy contract."""


class ConvergenceFailure(NumericalError):
    pass


class TargetMismatch(NumericalError):
    """A solved geodesic failed to reproduce its target state."""


class QuadratureNotConverged(NumericalError):
    pass


class UnknownClaim(QPathDivError):
    pass


class ConfigError(QPathDivError):
    pass
