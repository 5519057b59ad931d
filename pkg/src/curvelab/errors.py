"""Exception hierarchy shared by all curvelab modules."""


class CurvelabError(Exception):
    """Base class for every error raised by curvelab."""


# finite fields

class NonPrimeCharacteristic(CurvelabError, ValueError):
    pass


class FieldTooLarge(CurvelabError):
    pass


class FieldMismatch(CurvelabError, TypeError):
    pass


class DivisionByZero(CurvelabError, ZeroDivisionError):
    pass


class NotAnExtension(CurvelabError, ValueError):
    pass


class RootNotFound(CurvelabError, RuntimeError):
    pass


# polynomials

class ArityMismatch(CurvelabError, ValueError):
    pass


class NotHomogeneous(CurvelabError, ValueError):
    pass


class DegreeTooSmall(CurvelabError, ValueError):
    pass


class ZeroDivisor(CurvelabError, ZeroDivisionError):
    pass


class VariableAbsent(CurvelabError, ValueError):
    pass


class PolySyntaxError(CurvelabError, SyntaxError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(PolySyntaxError):
    pass


class BadCoefficient(PolySyntaxError):
    pass


# curves

class ZeroPolynomial(CurvelabError, ValueError):
    pass


class PthPower(CurvelabError, ValueError):
    pass


class PointNotOnCurve(CurvelabError, ValueError):
    pass


class NotSingular(CurvelabError, ValueError):
    pass


class SingularPoint(CurvelabError, ValueError):
    pass


class LineMissesPoint(CurvelabError, ValueError):
    pass


class NotAtOrigin(CurvelabError, ValueError):
    pass


class ResolutionDepthExceeded(CurvelabError, RuntimeError):
    pass


class NotEnoughPoints(CurvelabError, RuntimeError):
    pass


class GenusUncertain(CurvelabError):
    pass


class UnknownExample(CurvelabError, KeyError):
    pass
