"""Exception hierarchy shared across the package.

Validation errors map to CLI exit code 1, numerical failures to exit code 2.
"""


class FusscatError(Exception):
    """Base class for all package errors."""


class ValidationError(FusscatError):
    """Bad parameters or malformed input; the request never ran."""


class CapExceededError(ValidationError):
    """A table size exceeded its configured cap."""


class ProvenanceError(ValidationError):
    """An operation received a matrix that did not come from the required
    upstream step (e.g. centering a matrix that was never truncated)."""


class NumericalError(FusscatError):
    """A numerical routine failed to meet its contract."""


class BranchTrackingError(NumericalError):
    """Root continuation lost the branch; carries the offending z."""

    def __init__(self, message, z):
        super().__init__(f"{message} at z={z!r}")
        self.z = z


class NormalizationError(NumericalError):
    """Recovered density mass fell outside the accepted window."""
