"""Exception hierarchy shared by every module of the package."""


class TwoLevelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TwoLevelError, ValueError):
    """A parameter lies outside the domain of an operation."""


class ShapeError(TwoLevelError, ValueError):
    """Dimensions of an instance, bid vector or outcome do not agree."""


class InvalidOutcomeError(TwoLevelError, ValueError):
    """An outcome violates feasibility, budget balance or non-negativity."""


class EmptyGroupError(TwoLevelError, ValueError):
    pass


class NoGroupsError(TwoLevelError, ValueError):
    pass


class InfeasiblePaymentError(TwoLevelError, ValueError):
    """A group was charged more than its members can cover by equal split."""


class InstanceTooLargeError(TwoLevelError, ValueError):
    pass


class ModelMismatchError(TwoLevelError, ValueError):
    """The mechanism does not accept the instance's valuation model."""


class DegenerateRatioError(TwoLevelError, ArithmeticError):
    """The mechanism's welfare is zero so the ratio is undefined."""


class ParseError(TwoLevelError, ValueError):
    """An instance or report file could not be parsed."""
