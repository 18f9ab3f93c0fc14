"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`TwoProjError`, so
callers that run many checks in a row (the verification harness, the CLI)
can record a failure and move on without catching unrelated bugs.
"""


class TwoProjError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(TwoProjError, ValueError):
    pass


class NotSymmetric(TwoProjError, ValueError):
    pass


class NotProjection(TwoProjError, ValueError):
    pass


class NotPSD(TwoProjError, ValueError):
    pass


class NonConvergence(TwoProjError, ArithmeticError):
    pass


class NotGeneric(TwoProjError, ValueError):
    """Raised when an operation needs a pair in generic position."""


class RankMismatch(TwoProjError, ValueError):
    pass


class EquivalenceViolation(TwoProjError, ArithmeticError):
    """Conditions that must agree mathematically disagreed numerically."""


class BadGenerator(TwoProjError, ValueError):
    pass


class NotInCommutant(TwoProjError, ValueError):
    pass


class GenerationFailure(TwoProjError, RuntimeError):
    pass


class ParseError(TwoProjError, ValueError):
    pass
