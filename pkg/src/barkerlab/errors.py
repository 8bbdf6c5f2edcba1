"""Exception types shared across the package."""


class BarkerLabError(Exception):
    """Base class for errors raised by barkerlab."""


class ParseError(BarkerLabError, ValueError):
    """Sequence text could not be parsed.

    ``position`` is the 1-based index of the offending character, or None
    when the problem is not tied to a single position (e.g. empty input).
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class GuardRailError(BarkerLabError):
    """A search was refused because it exceeds a built-in size rail."""


class BudgetExceededError(GuardRailError):
    """A node or sample budget ran out before the operation finished."""


class InvariantViolationError(BarkerLabError):
    """An internal cross-check that must always hold has failed."""


class UsageError(BarkerLabError):
    """Invalid command-line usage."""
