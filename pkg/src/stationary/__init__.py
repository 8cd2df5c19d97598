"""Stationary distributions of irreducible row-stochastic matrices.

Two independent solvers (elimination on (P - I)^T and Cesaro averaging of
uniform-start iterates) plus a Monte Carlo cross-check.
"""

__version__ = "0.1.0"

from .cesaro import cesaro_solve, residual_bound
from .core import ProbabilityVector, StochasticMatrix, mat_mul, residual_norm, validate, vec_mat_mul
from .direct import SolveReport, kernel_basis, rank_of_P_minus_I, solve_stationary_direct, verify_strict_positivity
from .irreducibility import IrreducibilityCertificate, build_graph, is_irreducible, min_positive_power
from .simulator import TrajectoryStats, empirical_distribution, sample_trajectory
from .testkit import FixtureSpec, generate

__all__ = [
    "ProbabilityVector", "StochasticMatrix", "validate", "vec_mat_mul", "mat_mul", "residual_norm",
    "build_graph", "is_irreducible", "min_positive_power", "IrreducibilityCertificate",
    "rank_of_P_minus_I", "kernel_basis", "solve_stationary_direct", "verify_strict_positivity", "SolveReport",
    "cesaro_solve", "residual_bound",
    "sample_trajectory", "empirical_distribution", "TrajectoryStats",
    "FixtureSpec", "generate",
]
