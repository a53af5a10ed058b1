"""Exception hierarchy shared by all traptile modules."""


class TraptileError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(TraptileError, ZeroDivisionError):
    pass


class MixedContext(TraptileError, ValueError):
    """Operands live in different quadratic fields."""


class ParseError(TraptileError, ValueError):
    pass


class DomainError(TraptileError, ValueError):
    """Argument outside the domain of a function (e.g. G(x) with x <= 1)."""


class KindMismatch(TraptileError, ValueError):
    """Composition children do not have the kinds a combinator requires."""


class PreconditionError(TraptileError, ValueError):
    """A theorem or lemma hypothesis does not hold for the given input."""


class SingularSystem(TraptileError, ArithmeticError):
    """Linear system has no unique solution."""
