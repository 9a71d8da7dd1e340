"""Exception types raised by the engine.

Mathematical-check failures are reported as return values (reports), not
exceptions; exceptions signal misuse or structural breakdowns that the
generic-q assumption rules out.
"""


class QhypError(Exception):
    """Base class for engine errors."""


class PoleError(QhypError, ZeroDivisionError):
    """Evaluation point is a zero of the denominator."""


class EvalAtZeroError(QhypError, ValueError):
    """Laurent polynomials cannot be evaluated at q = 0."""


class ParseError(QhypError, ValueError):
    """Malformed scalar literal."""


class SpaceMismatchError(QhypError, ValueError):
    """Vectors from different spaces combined."""


class NoSuchComponentError(QhypError, KeyError):
    """Requested isotypic component does not exist."""


class DecompositionIncompleteError(QhypError, ArithmeticError):
    """Isotypic dimensions do not exhaust the tensor power (generic-q violation or bug)."""


class BasisDeficiencyError(QhypError, ArithmeticError):
    """Highest components fail to complement the ideal; flatness broken at this q."""


class DegreeOverflowError(QhypError, ValueError):
    """Operation would exceed the configured degree bound."""


class UnexpectedDimensionError(QhypError, ArithmeticError):
    """An intertwiner space has a dimension the fusion rules forbid."""


class ProportionalityError(QhypError, ArithmeticError):
    """Operator composition is not proportional to the bracket representation."""


class AnchorExistenceError(QhypError, ArithmeticError):
    """Determining equation for an anchor scalar has no nonzero root."""


class AnchorUniquenessError(QhypError, ArithmeticError):
    """Determining equations for an anchor scalar are inconsistent."""
