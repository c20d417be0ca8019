"""Exception types raised across the package."""


class WmubError(Exception):
    """Base class for recoverable errors."""


class NotInvertible(WmubError, ZeroDivisionError):
    """The element is a zero divisor of Z(d)."""


class InvalidDimension(WmubError, ValueError):
    pass


class DimensionMismatch(WmubError, ValueError):
    pass


class NotSymplectic(WmubError, ValueError):
    pass


class SameBasis(WmubError, ValueError):
    pass


class SameLine(WmubError, ValueError):
    pass


class NotMaximal(WmubError, ValueError):
    """The generated point set has fewer than d points."""


class NonconvergentParameter(WmubError, ValueError):
    """Theta series requested with Im(tau) <= 0."""


class QuadratureNotConverged(WmubError, ArithmeticError):
    pass


class ZeroResidualTooLarge(WmubError, ArithmeticError):
    """A closed-form zero is not a numerical zero of the analytic representation."""


class TrialityViolation(WmubError, AssertionError):
    def __init__(self, label, message):
        super().__init__(f"{label}: {message}")
        self.label = label


class OverlapMismatch(WmubError, ArithmeticError):
    """A squared overlap is neither 0 nor close to k/d."""
