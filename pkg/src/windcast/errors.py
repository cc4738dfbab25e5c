"""Exception hierarchy.

Every windcast exception derives from :class:`WindcastError` so callers can
catch the whole family, and additionally from the closest builtin
(``ValueError``, ``IndexError``, ``OSError``) so untargeted code behaves
sensibly.  Missing input files raise the builtin ``FileNotFoundError``.
"""


class WindcastError(Exception):
    """Base class for all windcast errors."""


# --- series construction and partitioning ---

class EmptyInput(WindcastError, ValueError):
    """No rows were supplied."""


class NonMonotonicTimestamps(WindcastError, ValueError):
    """Timestamps are not strictly increasing."""


class AllDaysDropped(WindcastError, ValueError):
    """The gap policy removed every day of data."""


class SeriesTooShort(WindcastError, ValueError):
    """Series is shorter than the operation requires."""


class InvalidPeriod(WindcastError, ValueError):
    """Partition period must be at least 2 samples."""


class IndexOutOfRange(WindcastError, IndexError):
    """Column index outside the partition matrix."""


# --- AR fitting and prediction ---

class TooShort(WindcastError, ValueError):
    """Not enough samples for the requested AR order."""


class NonFiniteInput(WindcastError, ValueError):
    """Input contains NaN or infinity."""


class InsufficientHistory(WindcastError, ValueError):
    """Fewer history values than the model order."""


# --- wavelet analysis ---

class NoDominantPeriod(WindcastError):
    """The global wavelet spectrum has no significant peak."""


class AllMasked(WindcastError, ValueError):
    """Every sample at some scale lies inside the cone of influence."""


# --- forecasting and evaluation ---

class NotEnoughDays(WindcastError, ValueError):
    """Partitioned forecasting needs at least 3 complete days."""


class EmptySeries(WindcastError, ValueError):
    """Operation applied to an empty series."""


class LengthMismatch(WindcastError, ValueError):
    """Paired sequences differ in length."""


class NotDivisible(WindcastError, ValueError):
    """Slot count is not divisible by the aggregation width."""


class EmptyList(WindcastError, ValueError):
    """Aggregation over an empty collection."""


class MissingHistory(WindcastError, ValueError):
    """A backtest target day lacks the required training history."""


class UnknownMethod(WindcastError, ValueError):
    """Forecast method name is not recognised."""


# --- ingestion and output ---

class ParseError(WindcastError, ValueError):
    """A row of the input file could not be parsed."""

    def __init__(self, row: int, column, reason: str):
        self.row = row
        self.column = column
        self.reason = reason
        super().__init__(f"row {row}, column {column!r}: {reason}")


class InconsistentSamplingInterval(WindcastError, ValueError):
    """Timestamp spacing disagrees with the configured interval."""


class NegativeSpeed(WindcastError, ValueError):
    """Wind speed below zero in the input file."""

    def __init__(self, row: int, value: float):
        self.row = row
        self.value = value
        super().__init__(f"row {row}: negative wind speed {value}")


class WriteError(WindcastError, OSError):
    """An output file could not be written."""
