"""Exception hierarchy shared by the whole package."""


class Error(Exception):
    """Base class for all cauchyreals errors."""


class DomainError(Error):
    """An operand is outside the domain of an exact operation
    (zero denominator, negative square-root set, empty element list, ...)."""


class WitnessInvalid(Error):
    """An apartness witness failed its acceptance check against the number
    it claims to separate from zero."""


class BudgetExceeded(Error):
    """A step or query ceiling was reached before the requested precision.

    This is a resource verdict, not a mathematical one: it never asserts
    anything about the value being computed."""


class OutOfDomain(Error):
    """A real was certified to lie outside the interval it must belong to."""


class DivisionNotSeparated(Error):
    """The denominator could not be separated from zero within the search
    budget.  The denominator may still be nonzero; the budget only bounds
    how hard we looked."""


class NegativeRadicand(Error):
    """The argument of a square root was certified to be negative."""


class ParseError(Error):
    """Syntax error with a byte offset and the set of tokens that were
    acceptable at that position."""

    def __init__(self, message, offset, expected=()):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.expected = frozenset(expected)

    def __str__(self):
        return f"{self.message} (at offset {self.offset})"
