"""Exception hierarchy shared by every module of the toolkit."""


class IclError(Exception):
    """Base class for all toolkit errors."""


class ParseError(IclError, SyntaxError, ValueError):
    """Polynomial text could not be parsed; ``position`` is a character offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownVariable(ParseError):
    pass


class BadCoefficient(ParseError):
    pass


class RingError(IclError, ValueError):
    """Invalid ring context (duplicate variables, non-prime modulus, ...)."""


class RingMismatch(IclError, ValueError):
    pass


class ZeroPolynomial(IclError, ValueError):
    pass


class ArityMismatch(IclError, ValueError):
    pass


class NotDivisible(IclError, ArithmeticError):
    pass


class BudgetExceeded(IclError, RuntimeError):
    """A Groebner computation used more reduction steps than allowed."""


class OrderMismatch(IclError, ValueError):
    pass


class UnitIdeal(IclError, ValueError):
    pass


class ZeroIdeal(IclError, ValueError):
    pass


class NotZeroDimensional(IclError, ValueError):
    pass


class NotSubideal(IclError, ValueError):
    pass


class NotMPrimary(IclError, ValueError):
    pass


class GenericityFailure(IclError, RuntimeError):
    """Random choices standing in for generic ones disagreed or degenerated."""


class OrderDrop(IclError, ValueError):
    """The chosen pivot is tangent to every initial form of the ideal."""


class NonRationalBasePoint(IclError, ValueError):
    def __init__(self, factor):
        super().__init__(
            f"base point defined by irreducible factor {factor} is not rational; "
            "try a prime field such as Fp:65537"
        )
        self.factor = factor


class NotTorsionfree(IclError, ValueError):
    pass


class NotContracted(IclError, ValueError):
    pass


class HeightTooSmall(IclError, ValueError):
    pass


class SchemaError(IclError, ValueError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
