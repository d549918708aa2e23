"""Exceptions raised by the channel model.

Every exception carries the process exit code the CLI reports for it.
"""


class ChannelModelError(Exception):
    """Base class for all channel model errors."""

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ShapeMismatchError(ChannelModelError, ValueError):
    """Raised when an array does not have the expected length or shape."""

    exit_code = 5

    def __init__(self, message: str, expected: object = None, actual: object = None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class NonFiniteError(ChannelModelError, ValueError):
    """Raised when a NaN or Inf shows up where finite values are required."""

    exit_code = 6

    def __init__(self, message: str, block: str | int | None = None):
        super().__init__(message)
        self.block = block


class InvalidConditionError(ChannelModelError, ValueError):
    """Raised for a degenerate link condition (zero-length displacement)."""

    exit_code = 5


class PathVectorError(ChannelModelError, ValueError):
    """Raised when a link cannot be encoded or a path vector cannot be decoded."""

    exit_code = 5


class NotTrainedError(ChannelModelError):
    """Raised when generation is requested from an untrained model."""

    exit_code = 6


class TrainingDataError(ChannelModelError, ValueError):
    """Raised when the training set cannot support the requested run."""

    exit_code = 6


class DatasetFormatError(ChannelModelError, ValueError):
    """Raised for malformed or out-of-range dataset records."""

    exit_code = 5

    def __init__(self, message: str, line_number: int | None = None, field: str | None = None):
        location = f"line {line_number}: " if line_number is not None else ""
        where = f"{field}: " if field else ""
        super().__init__(f"{location}{where}{message}")
        self.reason = message
        self.line_number = line_number
        self.field = field


class ModelVersionError(ChannelModelError):
    """Raised when a model file was written by an incompatible format version."""

    exit_code = 4

    def __init__(self, found: str | None, expected: str):
        super().__init__(f"Model format version {found!r} is not supported (expected {expected!r})")
        self.found = found
        self.expected = expected


class ModelFormatError(ChannelModelError, ValueError):
    """Raised when a model file is not valid JSON or lacks a required section."""

    exit_code = 5
