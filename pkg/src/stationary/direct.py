"""Stationary distribution by Gaussian elimination on (P - I)^T.

For irreducible P the kernel of P - I is exactly the constant vectors, so
P - I has rank n - 1, its transpose does too, and the left fixed points of P
form a single line. Normalising that line to unit mass gives the unique
stationary distribution, which is then checked to be strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import ProbabilityVector, StochasticMatrix, probability_vector, residual_norm
from .errors import NonPositiveEntry, NotUniqueStationary


@dataclass(frozen=True)
class KernelBasis:
    dimension: int
    vectors: list[np.ndarray] = field(default_factory=list)


@dataclass(frozen=True)
class SolveReport:
    method: str  # "direct" or "cesaro"
    iterations: int
    residual: float
    positivity_margin: float
    kernel_dimension: Optional[int] = None


def default_pivot_tol(M: np.ndarray) -> float:
    n = M.shape[0]
    return 1e-12 * n * float(np.max(np.abs(M).sum(axis=1), initial=0.0))


def p_minus_i_pivot_tol(n: int) -> float:
    """Pivot cutoff for P - I (or its transpose).

    Forming p(i, i) - 1 already costs rounding relative to ||P|| + ||I|| = 2,
    so ||P - I|| itself is the wrong scale when P is close to the identity.
    """
    return 1e-12 * n * 2.0


def _echelon(M: np.ndarray, pivot_tol: float) -> tuple[np.ndarray, list[int]]:
    """Row echelon form by partial pivoting; returns (U, pivot columns).

    A column whose best remaining pivot is <= pivot_tol is treated as free.
    """
    U = np.array(M, dtype=float, copy=True)
    rows, cols = U.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(U[r:, c])))
        if abs(U[p, c]) <= pivot_tol:
            U[r:, c] = 0.0
            continue
        if p != r:
            U[[r, p]] = U[[p, r]]
        factors = U[r + 1:, c] / U[r, c]
        U[r + 1:, c:] -= np.outer(factors, U[r, c:])
        U[r + 1:, c] = 0.0
        pivots.append(c)
        r += 1
    return U, pivots


def numerical_rank(M, pivot_tol: Optional[float] = None) -> int:
    M = np.asarray(M, dtype=float)
    if pivot_tol is None:
        pivot_tol = default_pivot_tol(M)
    return len(_echelon(M, pivot_tol)[1])


def rank_of_P_minus_I(P: StochasticMatrix, pivot_tol: Optional[float] = None) -> int:
    a = np.asarray(P)
    n = a.shape[0]
    return numerical_rank(a - np.eye(n), p_minus_i_pivot_tol(n) if pivot_tol is None else pivot_tol)


def kernel_basis(M, pivot_tol: Optional[float] = None) -> KernelBasis:
    """Null space basis of a square matrix, one vector per free column.

    Each free variable is set to 1 (the others to 0) and the pivot variables
    are recovered by back substitution; vectors are scaled to max-norm 1.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if pivot_tol is None:
        pivot_tol = default_pivot_tol(M)
    U, pivots = _echelon(M, pivot_tol)
    n = M.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    vectors = []
    for f in free:
        x = np.zeros(n)
        x[f] = 1.0
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            x[c] = -(U[r, c + 1:] @ x[c + 1:]) / U[r, c]
        vectors.append(x / np.max(np.abs(x)))
    return KernelBasis(len(vectors), vectors)


def verify_strict_positivity(pi, positivity_tol: float = 0.0) -> float:
    """Return min_i pi(i), raising NonPositiveEntry if it is <= positivity_tol."""
    v = np.asarray(pi, dtype=float)
    i = int(np.argmin(v))
    if not v[i] > positivity_tol:
        raise NonPositiveEntry(i, float(v[i]))
    return float(v[i])


def solve_stationary_direct(
    P: StochasticMatrix,
    pivot_tol: Optional[float] = None,
    positivity_tol: float = 0.0,
) -> tuple[ProbabilityVector, SolveReport]:
    n = P.n
    if n == 1:
        pi = probability_vector([1.0])
        return pi, SolveReport("direct", 0, residual_norm(pi, P), 1.0, 1)

    a = np.asarray(P)
    kb = kernel_basis((a - np.eye(n)).T, p_minus_i_pivot_tol(n) if pivot_tol is None else pivot_tol)
    if kb.dimension != 1:
        raise NotUniqueStationary(kb.dimension)
    w = kb.vectors[0]
    total = w.sum()
    if total == 0.0:
        raise NonPositiveEntry(int(np.argmin(w)), float(np.min(w)))
    # dividing by a negative total also fixes the sign
    w = w / total
    margin = verify_strict_positivity(w, positivity_tol)
    pi = probability_vector(w)
    return pi, SolveReport("direct", 0, residual_norm(pi, P), margin, 1)
