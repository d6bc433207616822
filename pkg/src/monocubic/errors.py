"""Exception hierarchy shared by the arithmetic, decision and census layers."""


class MonocubicError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(MonocubicError, ValueError):
    pass


class CeilingExceeded(MonocubicError, ValueError):
    """Integer is above the configured factorization ceiling."""


class NotCubeFree(InvalidInput):
    pass


class BadModulus(InvalidInput):
    pass


class NotASolution(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


class BudgetExceeded(MonocubicError):
    pass


class DivisionByZeroPoly(MonocubicError, ZeroDivisionError):
    pass


class InternalError(MonocubicError, AssertionError):
    """An internal consistency check failed; always a bug, never bad input."""


class InternalSignError(InternalError):
    pass


class FormulaMismatch(InternalError):
    pass


class NonIntegralU(InternalError):
    pass


class InternalBranchError(InternalError):
    pass


class CacheVersionError(MonocubicError):
    pass
