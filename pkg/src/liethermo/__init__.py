"""Lie-group thermodynamics on so(2) and so(3): potentials, cocycles, the
generalized Fisher metric, gradient/Hamiltonian flows and coadjoint orbits."""

from . import dynamics, fisher, lie, linalg, orbits, thermo
from .errors import DomainError, LieThermoError, NumericError, SingularityError, StructureError

__all__ = [
    "dynamics",
    "fisher",
    "lie",
    "linalg",
    "orbits",
    "thermo",
    "DomainError",
    "LieThermoError",
    "NumericError",
    "SingularityError",
    "StructureError",
]

__version__ = "0.1.0"
