"""Exception types raised across the package."""


class ThetaForgeError(Exception):
    """Base class for every error raised by theta_forge."""


class DivisionNotExact(ThetaForgeError, ArithmeticError):
    pass


class DivisionByZero(ThetaForgeError, ZeroDivisionError):
    pass


class OrderMismatch(ThetaForgeError, ValueError):
    pass


class ZeroInitialForm(ThetaForgeError, ValueError):
    """The initial linear form is identically zero."""


class ConditionViolated(ThetaForgeError, ValueError):
    pass


class TruncationTooShort(ThetaForgeError, ValueError):
    pass


class ZeroScalar(ThetaForgeError, ValueError):
    pass


class ZeroDenominator(ThetaForgeError, ZeroDivisionError):
    pass


class InvalidParameters(ThetaForgeError, ValueError):
    pass


class ParseError(ThetaForgeError, ValueError):
    """Malformed operator or form text; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset


class OperatorSyntaxError(ParseError):
    pass


class MixedBasis(ParseError):
    pass


class NegativePower(ParseError):
    pass


class EmptyForm(ParseError):
    pass
