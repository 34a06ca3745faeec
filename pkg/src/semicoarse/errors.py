class SemiCoarseError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SemiCoarseError, ValueError):
    """Malformed or inconsistent input (unknown vertex, bad dimension, ...)."""


class PreconditionError(SemiCoarseError, ValueError):
    """An operation's mathematical precondition does not hold.

    ``witness`` carries the offending data (a pair of points, a slice
    index, ...) when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExhausted(SemiCoarseError):
    """A search hit its node budget before finishing."""
