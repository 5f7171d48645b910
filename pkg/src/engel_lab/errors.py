"""Exception hierarchy. The CLI maps these onto exit codes."""


class EngelLabError(Exception):
    exit_code = 1


class UsageError(EngelLabError, ValueError):
    """Bad arguments: mismatched operands, unknown check ids, malformed specs."""

    exit_code = 2


class SpecParseError(UsageError):
    def __init__(self, message, position=None, token=None):
        self.position = position
        self.token = token
        if position is not None:
            message = f"{message} at position {position}"
        if token is not None:
            message = f"{message} (near {token!r})"
        super().__init__(message)


class CapacityError(EngelLabError):
    """A group (or a requested computation) is larger than the configured cap."""

    exit_code = 3


class CapabilityError(EngelLabError):
    """Operation needs enumeration but the group is black-box."""

    exit_code = 2


class ValidationError(EngelLabError):
    """A table or construction fails the group axioms."""

    exit_code = 2


class PreconditionError(EngelLabError, ValueError):
    exit_code = 2


class InvariantViolation(EngelLabError, AssertionError):
    """Raised when two computations that must agree do not; always an engine bug."""

    exit_code = 1
