"""Exception hierarchy shared by all submodules."""


class DecilimError(Exception):
    """Base class for library errors."""


class PolySyntaxError(DecilimError, ValueError):
    """Malformed polynomial text.

    Attributes
    ----------
    position : int
        Zero-based character offset where parsing failed.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DimensionError(DecilimError, ValueError):
    """Operands live in different variable counts, or a dimension limit was hit."""


class BudgetError(DecilimError):
    """Predicted coefficient growth exceeds the configured bit budget."""


class NumericError(DecilimError, ArithmeticError):
    """A numerical routine failed to reach its tolerance or converge."""
