"""Exception hierarchy shared by all nonext modules."""


class NonextError(ValueError):
    """Base class for every error raised by this package."""


class NegativeWeightError(NonextError):
    pass


class ZeroTotalMassError(NonextError):
    pass


class NotNormalizedError(NonextError):
    pass


class NonFiniteInputError(NonextError):
    pass


class ZeroSizeError(NonextError):
    pass


class ZeroMarginalError(NonextError):
    pass


class DenominatorTooSmallError(NonextError):
    pass


class InvalidQError(NonextError):
    """q must be a finite real strictly greater than zero."""


class UnknownPhiError(NonextError, KeyError):
    pass


class NonFinitePhiError(NonextError):
    pass


class BadGridError(NonextError):
    pass


class PhiZeroError(NonextError, ZeroDivisionError):
    """phi(q) vanished at some q != 1."""


class PhiDerivativeZeroError(NonextError, ZeroDivisionError):
    pass


class PhiConditionViolation(NonextError):
    pass


class ParseError(NonextError):
    pass
