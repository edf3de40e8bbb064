"""Exception hierarchy shared by every chaoquant module."""


class ChaoquantError(Exception):
    """Base class for all library errors."""


class ParameterOutOfRange(ChaoquantError, ValueError):
    """A parameter falls outside its admissible range.

    ``field`` names the offending parameter when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NonFiniteInput(ChaoquantError, ValueError):
    pass


class IndexOutOfRange(ChaoquantError, IndexError):
    pass


class LengthMismatch(ChaoquantError, ValueError):
    pass


class WordWidthMismatch(ChaoquantError, ValueError):
    pass


class ZeroSignalPower(ChaoquantError, ValueError):
    pass


class DistortionZero(ChaoquantError, ArithmeticError):
    """Reconstruction is identical to the original, so SQNR is infinite."""


class MalformedStream(ChaoquantError, ValueError):
    pass


class UnsupportedFormat(ChaoquantError, ValueError):
    pass


class MalformedHeader(ChaoquantError, ValueError):
    pass


class MissingSampleRate(ChaoquantError, ValueError):
    pass


class IoFailure(ChaoquantError, OSError):
    pass


class EmptyResult(ChaoquantError, ValueError):
    pass
