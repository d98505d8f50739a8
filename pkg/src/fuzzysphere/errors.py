"""Exception and warning types shared across the package."""


class FuzzySphereError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DomainError(FuzzySphereError, ValueError):
    pass


class DivisionByZero(FuzzySphereError, ZeroDivisionError):
    pass


class DuplicateNode(FuzzySphereError, ValueError):
    pass


class DegreeExceeded(FuzzySphereError, ArithmeticError):
    pass


class MixedAlphabet(FuzzySphereError, ValueError):
    pass


class ExpressionSyntaxError(FuzzySphereError, ValueError):
    """Malformed expression text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class DegenerateNorm(FuzzySphereError, ZeroDivisionError):
    pass


class DivergentLimit(FuzzySphereError, ArithmeticError):
    pass


class NotDivisible(FuzzySphereError, ArithmeticError):
    pass


class MissingExactForm(FuzzySphereError, ValueError):
    pass


class DegenerateSigmaWarning(UserWarning):
    """Raised as a warning when a norm sign vanishes at a specialization."""
