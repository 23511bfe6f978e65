"""Exception hierarchy.

Input problems derive from :class:`InvalidInput` (CLI exit code 2); broken
internal invariants derive from :class:`InternalError` (exit code 3).
"""


class HyperZetaError(Exception):
    pass


class InvalidInput(HyperZetaError, ValueError):
    pass


class InternalError(HyperZetaError, ArithmeticError):
    pass


class NotMonic(InvalidInput):
    pass


class EvenDegree(InvalidInput):
    pass


class NotSquarefree(InvalidInput):
    pass


class NotCoprime(InvalidInput):
    pass


class ZeroConstantTerm(InvalidInput):
    pass


class IllegalStep(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class BudgetExceeded(InvalidInput):
    pass


class NonInvertibleDenominator(InternalError):
    pass


class NonInvertibleSmallInteger(InternalError):
    pass


class ValuationOverflow(InternalError):
    pass


class IntegralityFailure(InternalError):
    pass


class WeilBoundViolation(InternalError):
    pass


class FunctionalEquationMismatch(InternalError):
    pass


class NonIntegralNewton(InternalError):
    pass


class VerificationMismatch(InternalError):
    pass
