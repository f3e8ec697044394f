"""Exception hierarchy shared by all pipeline stages."""


class AHilbError(Exception):
    """Base class for all library errors."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail or {}


class InputError(AHilbError):
    """Malformed or mathematically inadmissible input (CLI exit code 1)."""


class ResourceLimitError(InputError):
    """Group order exceeds the configured enumeration cap."""


class InvariantViolationError(AHilbError):
    """An internal invariant failed; signals an implementation bug."""


class CorrespondenceError(AHilbError):
    """A verification check failed (CLI exit code 2)."""
