"""Semantic exception hierarchy shared by all ginv modules."""


class GinvError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(GinvError):
    """Operands have incompatible shapes for the requested operation."""


class SingularMatrixError(GinvError):
    """Exact inversion was requested for a matrix with determinant zero."""


class IndexExceedsOneError(GinvError):
    """The matrix has index >= 2, so no group or core inverse exists."""


class InternalInconsistencyError(GinvError):
    """A self-verifying construction failed its defining equations.

    This always indicates a bug in the construction route, never bad input.
    """


class TheoremFalsificationError(GinvError):
    """An exactly-checked theorem consequence failed on a concrete instance.

    Raised when equivalent conditions disagree or a guaranteed identity
    breaks; the message carries enough data to replay the instance.
    """


class GenerationExhaustedError(GinvError):
    """Random generation hit max_retries without an admissible instance."""


class ImpossibleRequestError(GinvError):
    """The requested instance class is empty, e.g. a range-violating
    perturbation of a full-rank matrix."""


class MatrixParseError(GinvError):
    """Matrix text could not be parsed; carries line/column context."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
