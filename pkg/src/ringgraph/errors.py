"""Exception types shared across the package."""


class RingGraphError(Exception):
    """Base class for every error raised by ringgraph."""


class InvalidModulus(RingGraphError):
    """A field or quotient modulus is not monic, or not irreducible where required."""


class OrderLimitExceeded(RingGraphError):
    """A requested ring would exceed the configured carrier-order cap."""


class IndexOutOfRange(RingGraphError):
    """An element index is outside the ring carrier."""


class NotLocal(RingGraphError):
    """An operation that requires a local ring was applied to a non-local one."""


class SearchBudgetExceeded(RingGraphError):
    """A backtracking search ran past its node budget; no partial result is returned."""


class NotComposable(RingGraphError):
    """Morphism composition was attempted across mismatched rings."""


class NotBijective(RingGraphError):
    """Inversion was attempted on a non-bijective morphism."""


class NotAutomorphism(RingGraphError):
    """A map that is not a verified automorphism was passed where one is required."""


class ParseError(RingGraphError):
    """Ring-expression syntax error, with a 1-based column and the expected tokens."""

    def __init__(self, message, column, expected=()):
        self.column = column
        self.expected = tuple(expected)
        if self.expected:
            message = f"{message} (column {column}, expected {' | '.join(self.expected)})"
        else:
            message = f"{message} (column {column})"
        super().__init__(message)


class SemanticError(RingGraphError):
    """Ring expression is syntactically valid but semantically impossible."""

    def __init__(self, message, column=None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)
