"""Exception hierarchy shared by all modules."""


class MonodromyError(Exception):
    """Base class for library errors."""


class MalformedInput(MonodromyError, ValueError):
    """Input text or values that do not parse or are out of range.

    ``line`` and ``column`` are 1-based when the error comes from a file.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class RankMismatch(MonodromyError, ValueError):
    """Operands live in free groups, braid groups or covers of different sizes."""


class InvalidFactor(MonodromyError, ValueError):
    """Factor exponent outside {1, 2, -2, 3} or base index out of range."""


class NotCancellingPair(MonodromyError, ValueError):
    """delete_node_pair called on factors that are not an inverse node pair."""


class NotClosedAtInfinity(MonodromyError, ValueError):
    """The product of the covering labels is not the identity permutation."""


class DisconnectedCover(MonodromyError, ValueError):
    """The covering labels do not act transitively on the sheets."""


class NotLiftable(MonodromyError, ValueError):
    """The braid does not stabilise the covering monodromy."""


class Incompatible(MonodromyError, ValueError):
    """Covering data and factorization fail the compatibility checks."""


class InternalConsistencyError(MonodromyError, RuntimeError):
    """A computed object violates an invariant it must satisfy by construction."""


class BoundExceeded(MonodromyError, ValueError):
    """A finite enumeration would exceed its configured size bound."""
