"""Exception types shared across the package."""


class GdoubleError(Exception):
    """Base class for all package errors."""


class InvalidFieldParameter(GdoubleError):
    pass


class InvalidArgument(GdoubleError):
    pass


class NonInvertibleScalar(GdoubleError):
    pass


class FieldMismatch(GdoubleError):
    pass


class AlgebraMismatch(GdoubleError):
    pass


class ArityMismatch(GdoubleError):
    pass


class TruncationOverflow(GdoubleError):
    """An exact result cannot be represented inside the truncation policy."""


class AntipodeNotInvertible(GdoubleError):
    pass


class RNotInvertible(GdoubleError):
    pass


class QuotientInconsistency(GdoubleError):
    pass


class BaseMismatch(GdoubleError):
    pass


class SchemaError(GdoubleError):
    """Malformed structure-constant file or scalar string."""
