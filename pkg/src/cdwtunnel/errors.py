"""Exception types raised across the package."""


class CDWError(Exception):
    """Base class for all package errors."""


class DomainError(CDWError, ValueError):
    """An argument lies outside the domain of the operation."""


class InputError(CDWError, ValueError):
    """Malformed or insufficient input data."""


class SeriesConvergenceError(CDWError, ArithmeticError):
    """A series did not meet its tolerance within the allowed number of terms.

    The partial sum reached so far is kept on the exception.
    """

    def __init__(self, message, partial_sum, n_terms):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.n_terms = n_terms
