"""Exception types raised across the package."""


class FwlabError(Exception):
    """Base class for all library errors."""


class NotPrime(FwlabError, ValueError):
    pass


class NotPrimitive(FwlabError, ValueError):
    pass


class InvalidPolynomial(FwlabError, ValueError):
    pass


class SmallDegree(FwlabError, ValueError):
    """Raised for t < 3 unless the caller explicitly opts in."""


class ZeroInput(FwlabError, ValueError):
    pass


class DivisionByZero(FwlabError, ZeroDivisionError):
    pass


class InternalError(FwlabError, RuntimeError):
    """An algebraic identity that must hold failed; indicates a bug."""


class NonIntegerCoefficient(InternalError):
    pass


class InconsistentS(InternalError):
    pass


class NonIntegralFrequency(InternalError):
    pass


class DimensionTooLarge(FwlabError):
    pass


class DimensionMismatch(FwlabError):
    pass


class IntersectionNotTrivial(FwlabError, ValueError):
    pass


class BoundViolated(InternalError):
    pass


class TooLarge(FwlabError):
    pass


class ZeroPair(FwlabError, ValueError):
    pass
