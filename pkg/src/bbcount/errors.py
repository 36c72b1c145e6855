"""Exception types shared across the package."""


class BBCountError(Exception):
    """Base class for all library errors."""


class DuplicateEdgeError(BBCountError):
    """The same (u, v) pair was supplied more than once."""

    def __init__(self, u: int, v: int):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.u = u
        self.v = v


class IndexOutOfRangeError(BBCountError):
    """A vertex index fell outside its side's range."""


class EmptySideError(BBCountError):
    """An operation needs both partitions to be nonempty."""


class MalformedLineError(BBCountError):
    """An input line could not be parsed as an edge."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class MissingValueError(BBCountError):
    """The sign policy needs a rating/sign value the edge does not carry."""


class InvalidSignValueError(BBCountError):
    """An explicit sign value was not one of 1, 0, -1."""


class InvalidKError(BBCountError):
    """Biclique size parameter k must be at least 2."""


class CountOverflowError(BBCountError):
    """A count exceeded the 64-bit unsigned range the engines guarantee."""


class InvalidThresholdsError(BBCountError):
    """Cooperation-regime thresholds must satisfy warp_max < partial_max."""


class NoWorkError(BBCountError):
    """A schedule report contains no work to compute a load ratio from."""


U64_MAX = 2**64 - 1


def checked_u64(value: int) -> int:
    """Return ``value`` unchanged, raising CountOverflowError past 2^64 - 1."""
    if value > U64_MAX:
        raise CountOverflowError(f"count {value} exceeds 64-bit unsigned range")
    return value
