"""Exception hierarchy for detlab.

Every error carries the process exit code the CLI reports for it.
"""

from typing import Optional


class DetlabError(Exception):
    """Base class for all detlab failures."""

    exit_code: int = 1


class ConfigError(DetlabError):
    """Malformed config file, bad override or unknown experiment name."""

    exit_code = 2


class NumericError(DetlabError):
    """A numerical procedure could not deliver a certified result."""

    exit_code = 3


class DomainError(NumericError, ValueError):
    """Argument outside the domain of a pure function (t <= 0, zero eigenvalue, ...)."""


class PoleError(NumericError):
    """Evaluation requested at a pole of an analytic continuation."""

    def __init__(self, message: str, residue: complex):
        super().__init__(message)
        self.residue = residue


class InvertibilityError(NumericError):
    """The operator has a kernel where an invertible one is required."""


class BracketError(NumericError):
    """Root bracketing or bisection failed on an interval."""

    def __init__(self, message: str, interval: Optional[tuple[float, float]] = None):
        super().__init__(message)
        self.interval = interval


class QuadratureError(NumericError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class FitError(NumericError):
    """Small-time least-squares fit is ill-conditioned or unusable."""

    def __init__(self, message: str, condition: float = float("nan")):
        super().__init__(message)
        self.condition = condition


class VerdictFailure(DetlabError):
    """An experiment ran but a fatal check did not hold."""

    exit_code = 4
