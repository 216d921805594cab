"""
Exception hierarchy for spinpath.

Every error raised on purpose by the library derives from SpinpathError and
carries an optional underlying cause. Diagnostic operations (validation and
the checks) report failing properties as data instead of raising.
"""

from typing import Any


class SpinpathError(Exception):
    """Base class for all spinpath errors."""

    def __init__(self, message: str, cause: Exception | None = None):
        super().__init__(message)
        self.message = message
        self.cause = cause


class RegionMismatchError(SpinpathError):
    """Operands live on different regions."""


class RegionTooLargeError(SpinpathError):
    """A region exceeds the configured dense-storage cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"Region of {size} sites exceeds the cap of {cap} sites")
        self.size = size
        self.cap = cap


class RegionError(SpinpathError):
    """Region nesting or containment requirement violated."""


class UnsupportedSpinError(SpinpathError):
    """Operation requires q = 2 Pauli generators."""


class DimensionError(SpinpathError, ValueError):
    """Matrix dimension does not match the region."""


class InvalidInteractionError(SpinpathError):
    """Interaction violates self-adjointness, phase or range constraints."""

    def __init__(self, message: str, violations: list[Any] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class InsufficientBoundaryError(SpinpathError):
    """Boundary configuration does not cover the sites the surface term needs."""


class IncoherentPathError(SpinpathError):
    """Consecutive path configurations are not related by the recorded flips."""


class EndpointMismatchError(SpinpathError):
    """Paths cannot be glued because end and start configurations differ."""


class TruncationError(SpinpathError, ValueError):
    """Negative truncation order."""


class IntensityError(SpinpathError, ValueError):
    """Invalid point-process intensity or grid size."""


class DegeneratePartitionError(SpinpathError):
    """Partition function vanished."""


class InvalidStateError(SpinpathError):
    """Matrix is not a density matrix (Hermitian, positive, unit trace)."""


class NonFaithfulStateError(SpinpathError):
    """State assigns (numerically) zero weight to the perturbation cocycle."""


class ModelParseError(SpinpathError):
    """Model file could not be parsed."""

    def __init__(self, message: str, line_number: int = 0, cause: Exception | None = None):
        location = f"line {line_number}: " if line_number else ""
        super().__init__(f"{location}{message}", cause)
        self.line_number = line_number


class CheckError(SpinpathError):
    """A check suite could not run."""

    def __init__(self, message: str, suite_name: str = "", cause: Exception | None = None):
        super().__init__(message, cause)
        self.suite_name = suite_name
