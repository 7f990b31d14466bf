"""qmkit: numerical companions to an introductory quantum mechanics course."""

from .constants import GAMMA_E, NATURAL, SI, PhysicalConstants, UnitMode, unit_system
from .errors import (
    BelowThreshold,
    ConsistencyError,
    DomainError,
    GapEnergyError,
    NoChannelError,
    QMError,
    QuantumNumberError,
    ResolutionError,
    ShapeError,
    SolverError,
    ZeroNormError,
)
from .grid import Grid1D, WaveFunction, assemble_hamiltonian, solve_eigen

__version__ = "0.1.0"

__all__ = [
    "GAMMA_E", "NATURAL", "SI", "PhysicalConstants", "UnitMode", "unit_system",
    "BelowThreshold", "ConsistencyError", "DomainError", "GapEnergyError", "NoChannelError",
    "QMError", "QuantumNumberError", "ResolutionError", "ShapeError", "SolverError", "ZeroNormError",
    "Grid1D", "WaveFunction", "assemble_hamiltonian", "solve_eigen",
]
