"""Exception hierarchy shared by every module."""


class LieThermoError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(LieThermoError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularityError(LieThermoError, ArithmeticError):
    """A matrix that must be inverted is (numerically) singular."""

    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class StructureError(LieThermoError):
    """An algebraic structure check (bracket inclusion, closure) failed."""


class NumericError(LieThermoError, ArithmeticError):
    """A numerical sub-computation (gradient, quadrature) failed."""
