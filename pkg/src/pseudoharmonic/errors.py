"""Exception hierarchy shared by all modules."""


class PhoError(Exception):
    """Base class for every error raised by the package."""


class DomainError(PhoError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole (e.g. Gamma at a non-positive integer)."""


class RangeOverflowError(PhoError, OverflowError):
    """Result exceeds the representable floating-point range."""


class DegreeBudgetError(DomainError):
    """Polynomial degree above the documented evaluation budget."""


class AccuracyLossError(PhoError, ArithmeticError):
    """Cancellation destroyed more digits than the tolerance budget allows."""


class QuadratureError(PhoError, ArithmeticError):
    """Adaptive integration failed to converge or met a NaN integrand."""


class BelowThresholdError(DomainError):
    """Momentum Renyi/Tsallis order at or below the convergence threshold."""


class GridTooCoarseError(PhoError, ArithmeticError):
    """Finite-difference Richardson residual exceeds the requested tolerance."""
