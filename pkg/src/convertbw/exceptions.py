"""Exception hierarchy shared by every module of :mod:`convertbw`."""


class ConvertbwError(Exception):
    """Base class for all library errors."""


class ZeroInverse(ConvertbwError, ZeroDivisionError):
    pass


class DimensionMismatch(ConvertbwError, ValueError):
    pass


class IndexOutOfRange(ConvertbwError, IndexError):
    pass


class NoSolution(ConvertbwError):
    """Raised when ``a @ x = b`` has no solution over F_p."""


class BadParams(ConvertbwError, ValueError):
    pass


class GenerationFailed(ConvertbwError):
    pass


class Infeasible(ConvertbwError):
    """A read plan does not admit a linear conversion."""


class InternalCheckFailed(ConvertbwError, AssertionError):
    """A self-check that can only fail through a bug in this package."""


class RegimeMismatch(ConvertbwError, ValueError):
    pass


class CaseConflict(InternalCheckFailed):
    pass


class IdentityViolation(InternalCheckFailed):
    pass


class LpInfeasible(ConvertbwError):
    pass


class SpaceTooLarge(ConvertbwError):
    pass


class BadGridSpec(ConvertbwError, ValueError):
    pass
