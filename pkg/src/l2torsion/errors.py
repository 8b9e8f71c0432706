"""Exception types raised by the library."""


class L2TorsionError(ValueError):
    """Base class for all argument/contract errors in this package."""


class NonZeroRemainder(L2TorsionError):
    pass


class InvalidDegree(L2TorsionError):
    pass


class InvalidShift(L2TorsionError):
    pass


class InvalidDimension(L2TorsionError):
    pass


class InvalidVolume(L2TorsionError):
    pass


class NonPositiveTime(L2TorsionError):
    pass
