"""Exception types raised across the package."""


class RegorthoError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(RegorthoError, ValueError):
    pass


class SingularMatrix(RegorthoError, ArithmeticError):
    pass


class NotSkewSymmetric(RegorthoError, ValueError):
    pass


class NotOrthogonal(RegorthoError, ValueError):
    pass


class NotRegularOrthogonal(NotOrthogonal):
    pass


class EigenvalueMinusOne(RegorthoError, ArithmeticError):
    """The matrix has -1 as an eigenvalue, so I + Q is singular."""


class PreconditionViolated(RegorthoError, ValueError):
    pass


class SearchExhausted(RegorthoError, RuntimeError):
    pass


class CapExceeded(RegorthoError, ValueError):
    """An exhaustive scan was requested for n above the permutation cap."""


class HypothesisViolated(PreconditionViolated):
    pass


class InvalidSwitchingSet(RegorthoError, ValueError):
    pass


class SingularWalkMatrix(RegorthoError, ArithmeticError):
    pass


class NotCospectral(RegorthoError, ValueError):
    pass


class FactorizationTimeout(RegorthoError, RuntimeError):
    pass


class FormatError(RegorthoError, ValueError):
    pass
