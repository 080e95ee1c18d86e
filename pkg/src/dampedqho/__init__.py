"""Quantized damped harmonic oscillator toolkit."""
from ._accel import backend_name
from .analysis import compare_spectrum, damping_sweep, numeric_spectrum, ordering_shift_check
from .errors import (
    DampedQHOError,
    DegenerateProblem,
    DimensionMismatch,
    NoBoundStateBranch,
    NonAffineEnergy,
    NonFiniteInput,
    NotHermitian,
    NotUnitaryDiagonal,
    UnresolvableLevels,
)
from .gauge import completed_square_defect, gauge_equivalence_defect
from .linalg import Spectrum, eig_general, eig_hermitian
from .model import OrderingScheme, PhysParams, Regime, analytic_energy, effective_frequency, regime_of
from .operators import FockBasis, Grid, build_hamiltonian

__version__ = "0.1.0"

__all__ = [
    "DampedQHOError",
    "DegenerateProblem",
    "DimensionMismatch",
    "FockBasis",
    "Grid",
    "NoBoundStateBranch",
    "NonAffineEnergy",
    "NonFiniteInput",
    "NotHermitian",
    "NotUnitaryDiagonal",
    "OrderingScheme",
    "PhysParams",
    "Regime",
    "Spectrum",
    "UnresolvableLevels",
    "analytic_energy",
    "backend_name",
    "build_hamiltonian",
    "compare_spectrum",
    "completed_square_defect",
    "damping_sweep",
    "effective_frequency",
    "eig_general",
    "eig_hermitian",
    "gauge_equivalence_defect",
    "numeric_spectrum",
    "ordering_shift_check",
    "regime_of",
]
