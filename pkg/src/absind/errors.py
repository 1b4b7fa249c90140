"""Exception types raised across the package."""


class AbsindError(ValueError):
    """Base class for every input/precondition error raised by absind."""


class LengthMismatch(AbsindError):
    pass


class InvalidCharacter(AbsindError):
    pass


class IndexOutOfRange(AbsindError, IndexError):
    pass


class DimensionTooLarge(AbsindError):
    pass


class InvalidDimension(AbsindError):
    pass


class TooManyFlips(AbsindError):
    pass


class InvalidAlpha(AbsindError):
    pass
