"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` (used by the CLI
for one-line diagnostics) and an ``exit_code`` grouping it into one of
three classes: 2 validation, 3 I/O, 4 domain.
"""


class LpnError(Exception):
    """Base class for all package errors."""

    code = "error"
    exit_code = 2


class InvalidParameterError(LpnError):
    code = "invalid-parameter"
    exit_code = 2


class DelayTooSmallError(InvalidParameterError):
    code = "delay-too-small"


class PathTooShortError(LpnError):
    code = "path-too-short"
    exit_code = 2


class TraceTooShortError(LpnError):
    code = "trace-too-short"
    exit_code = 2


class EmptyTraceError(LpnError):
    code = "empty-trace"
    exit_code = 2


class EmptyPsdError(LpnError):
    code = "empty-psd"
    exit_code = 2


class InvalidBinError(LpnError):
    code = "invalid-bin"
    exit_code = 2


class NonPositiveVarianceError(LpnError):
    code = "non-positive-variance"
    exit_code = 2


class LengthMismatchError(LpnError):
    code = "length-mismatch"
    exit_code = 2


class TooFewBitsError(LpnError):
    code = "too-few-bits"
    exit_code = 2


class AmbiguousInputError(LpnError):
    code = "ambiguous-input"
    exit_code = 2


class MissingMetadataError(LpnError):
    code = "missing-metadata"
    exit_code = 3


class VarianceOutOfRangeError(LpnError):
    code = "variance-out-of-range"
    exit_code = 4


class ClassicalExceedsMeasuredError(LpnError):
    code = "classical-exceeds-measured"
    exit_code = 4


class AllPointsFailedError(LpnError):
    code = "all-points-failed"
    exit_code = 4
