"""Shared exception types."""


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed or fails validation.

    Carries the 1-based source line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(RuntimeError):
    """An exhaustive search exceeded its configured state budget."""

    def __init__(self, message: str, limit: int | None = None):
        self.limit = limit
        super().__init__(message)


class NoSafeMoveError(RuntimeError):
    """The guided traveller has no move with a finite guarantee."""


class CyclicGraphError(ValueError):
    """A directed graph required to be acyclic contains a cycle."""
