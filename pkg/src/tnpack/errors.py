"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised for malformed .gr / .td input; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SizeCapError(RuntimeError):
    """Raised when a brute-force solver refuses an instance above its size cap."""


class PreconditionError(ValueError):
    """Raised when an operation's stated precondition does not hold."""
