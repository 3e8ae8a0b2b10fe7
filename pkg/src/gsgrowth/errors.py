"""Exception hierarchy shared by all modules."""


class GrowthError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GrowthError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(GrowthError, ValueError):
    """Mismatched or malformed arguments (e.g. series with different parameters)."""


class ResourceCapError(GrowthError):
    """A configured enumeration or work cap was exceeded."""

    def __init__(self, message, cap=None, bracket=None):
        super().__init__(message)
        self.cap = cap
        self.bracket = bracket


class DegreeCapError(ResourceCapError):
    """The Magnus valuation of a word was not reached below the truncation cap."""

    def __init__(self, message, cap, word=None, index=None, bracket=None):
        super().__init__(message, cap=cap, bracket=bracket)
        self.word = word
        self.index = index


class ParseError(GrowthError, ValueError):
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
        self.message = message
