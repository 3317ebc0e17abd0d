"""Exception hierarchy shared by every pykeccak module."""


class KeccakError(Exception):
    """Base class for all errors raised by pykeccak."""


class ParameterError(KeccakError, ValueError):
    """An argument is outside the supported set (lane width, variant, round index...)."""


class AlignmentError(KeccakError, ValueError):
    """A byte sequence does not line up with a lane or rate boundary."""


class PaddingError(KeccakError, ValueError):
    """A padded message does not follow the pad10*1 rule."""


class ContextStateError(KeccakError, RuntimeError):
    """A hashing context was used in the wrong phase (e.g. update after finalize)."""


class BijectivityError(KeccakError):
    """Two distinct inputs were mapped to the same permutation output."""

    def __init__(self, first, second, image):
        self.first = first
        self.second = second
        self.image = image
        super().__init__(f"collision: {first!r} and {second!r} both map to {image!r}")


class MeasurementError(KeccakError):
    """A benchmark workload finished too quickly for the timer to resolve it."""


class KatFormatError(KeccakError):
    """A known-answer-test file could not be parsed."""
