"""Entropic and geometric correlation quantifiers for two-qubit Bell-diagonal states."""

__version__ = "0.1.0"

from .correlations import (
    CorrelationReport,
    closest_classical_state,
    closest_product_state,
    full_report,
    geometric_quantifiers,
    reb_quantifiers,
)
from .dynamics import PhaseFlipParams, evolve, first_crossing, lambda_factor, trajectory
from .errors import AppendixViolation, NonPhysicalState, NotBellDiagonal, NotConverged
from .qstate import BellDiagonalState, bell_eigenvalues, is_entangled, is_physical, to_density_matrix

__all__ = [
    "AppendixViolation",
    "BellDiagonalState",
    "CorrelationReport",
    "NonPhysicalState",
    "NotBellDiagonal",
    "NotConverged",
    "PhaseFlipParams",
    "bell_eigenvalues",
    "closest_classical_state",
    "closest_product_state",
    "evolve",
    "first_crossing",
    "full_report",
    "geometric_quantifiers",
    "is_entangled",
    "is_physical",
    "lambda_factor",
    "reb_quantifiers",
    "to_density_matrix",
    "trajectory",
]
