"""Exception types shared across the package.

The CLI maps DomainError/CapacityError to exit code 2 (bad input) and
InvariantViolation to exit code 3 (internal bug, never a data condition).
"""


class PrimelensError(Exception):
    """Base class for all primelens errors."""


class DomainError(PrimelensError, ValueError):
    """An argument is outside the documented domain of an operation."""


class CapacityError(PrimelensError):
    """The request exceeds a configured memory or size budget."""


class NumericError(PrimelensError):
    """A numeric routine failed to converge; carries diagnostics."""

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class InvariantViolation(PrimelensError):
    """A mathematically guaranteed invariant failed; signals an implementation bug."""
