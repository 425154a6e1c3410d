"""Exception hierarchy shared across the package."""


class TuranTreeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TuranTreeError):
    """Input violates a documented precondition or invariant."""


class ParseError(ValidationError):
    """Malformed graph encoding; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int = -1):
        super().__init__(message if offset < 0 else f"{message} (byte {offset})")
        self.offset = offset


class UnsupportedError(ValidationError):
    """Request exceeds a hard size cap or an unimplemented regime."""


class InternalConsistencyError(TuranTreeError):
    """A re-verified internal invariant failed; signals a bug, not bad input."""
