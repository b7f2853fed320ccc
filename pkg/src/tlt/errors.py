"""Exception types shared across the toolkit."""


class TltError(Exception):
    """Base class for all toolkit errors."""


class ArityMismatchError(TltError, ValueError):
    """Two values that must share an arity do not."""


class VariableIndexError(TltError, ValueError):
    """A 1-based variable index is outside 1..arity."""


class NonPositiveError(TltError, ValueError):
    """An operation that requires a positive (monotone) function got a non-positive one."""


class NotThresholdInputError(TltError, ValueError):
    """An operation defined only on threshold functions got a non-threshold one."""


class UnsupportedArityError(TltError, ValueError):
    """The requested arity is beyond the cap of this operation."""


class IrrelevantVariableError(TltError, ValueError):
    """An operation that needs a relevant variable got an irrelevant one."""


class DnfParseError(TltError, ValueError):
    """Malformed DNF text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FormulaParseError(TltError, ValueError):
    """Malformed nested-formula text."""


class TableFormatError(TltError, ValueError):
    """Malformed truth-table text (expected ``<arity>:<bitstring>``)."""


class PivotLimitError(TltError, RuntimeError):
    """The simplex pivot cap was exceeded (should not happen with Bland's rule)."""
