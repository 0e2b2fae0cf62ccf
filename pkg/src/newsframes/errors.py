"""Exception hierarchy shared across the package."""


class NewsframesError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(NewsframesError):
    """Malformed input that cannot be tokenized/structured (carries a line number)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(NewsframesError):
    """A required header or field is missing."""


class StructuralError(NewsframesError):
    """Well-formed input with an inconsistent internal structure (e.g. head out of range)."""


class ValidationError(NewsframesError):
    """A record violates a type invariant."""


class ConflictError(NewsframesError):
    """Duplicate keys on load."""


class StatisticsError(NewsframesError):
    """A statistic is undefined for the given inputs (empty group, zero variance, ...)."""
