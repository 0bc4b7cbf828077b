"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or scan would exceed its configured budget."""

    def __init__(self, what, needed, limit):
        super().__init__(f"{what} needs {needed} > budget {limit}")
        self.what = what
        self.needed = needed
        self.limit = limit


class SpecParseError(ValueError):
    """A variety-spec string or export file failed to parse."""
