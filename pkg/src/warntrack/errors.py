"""Exception hierarchy shared across the package."""

from __future__ import annotations


class WarntrackError(Exception):
    """Base class for all errors raised by this package."""


class ReportParseError(WarntrackError):
    """A warning report or JSON input could not be parsed.

    Carries ``line`` and ``column`` when the underlying parser provides them.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column if column is not None else '?'})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(WarntrackError):
    """Input was parseable but violates a documented contract."""


class RewriteConflictError(ValidationError):
    """Two refactoring records rewrite the same field to different values."""

    def __init__(self, field: str, first: object, second: object):
        super().__init__(
            f"conflicting refactoring records rewrite {field!r} to different values: "
            f"{first!r} vs {second!r}"
        )
        self.field = field
        self.records = (first, second)


class ConfigurationError(WarntrackError):
    """The pipeline was wired incorrectly, e.g. a diff is missing for a changed file."""
