"""Exception hierarchy shared by every module."""


class VMError(Exception):
    """Base class for all library errors."""


class PreconditionError(VMError, ValueError):
    """An operation was called outside its domain (non-edge pivot, singular set, ...)."""


class CapacityError(VMError):
    """Input exceeds the size an exhaustive routine is willing to handle."""


class GraphFormatError(VMError, ValueError):
    """Malformed graph6 / JSON input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class ScriptError(VMError):
    """A script step could not be applied."""

    def __init__(self, message: str, index: int):
        super().__init__(f"step {index}: {message}")
        self.index = index
