"""Validated row-stochastic matrices, probability vectors and the few linear
operations the solvers are built from.

Row vectors are plain 1-D float arrays. Column vectors are never needed
explicitly; ``M @ w`` with a 1-D ``w`` plays that role.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeEntry,
    NonFiniteEntry,
    NotSquare,
    RowSumViolation,
    VectorSumViolation,
)

DEFAULT_ROW_SUM_TOL = 1e-9
DEFAULT_VECTOR_SUM_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Dense n x n matrix with nonnegative entries and unit row sums.

    Build instances with :func:`validate`; the constructor itself trusts its
    input. ``entries`` is a read-only array.
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Row vector with nonnegative entries summing to one."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.entries[i]

    def tolist(self) -> list[float]:
        return self.entries.tolist()


def validate(raw, row_sum_tol: float = DEFAULT_ROW_SUM_TOL, renormalize: bool = False) -> StochasticMatrix:
    """Check nonnegativity and unit row sums and wrap ``raw``.

    Rows are stored exactly as given unless ``renormalize`` is set, in which
    case each row (already within ``row_sum_tol`` of 1) is divided by its sum.
    """
    if row_sum_tol <= 0:
        raise ValueError("row_sum_tol must be positive")
    a = np.array(raw, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotSquare(a.shape)
    bad = np.argwhere(~np.isfinite(a))
    if len(bad):
        i, j = (int(x) for x in bad[0])
        raise NonFiniteEntry(i, j, float(a[i, j]))
    neg = np.argwhere(a < 0)
    if len(neg):
        i, j = (int(x) for x in neg[0])
        raise NegativeEntry(i, j, float(a[i, j]))
    sums = a.sum(axis=1)
    for i, s in enumerate(sums):
        if abs(s - 1.0) > row_sum_tol:
            raise RowSumViolation(i, float(s))
    if renormalize:
        a = a / sums[:, None]
    return StochasticMatrix(a)


def probability_vector(raw, vector_sum_tol: float = DEFAULT_VECTOR_SUM_TOL) -> ProbabilityVector:
    v = np.array(raw, dtype=float)
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionMismatch(v.shape, "(n,)")
    bad = np.flatnonzero(~np.isfinite(v) | (v < 0))
    if len(bad):
        i = int(bad[0])
        if not np.isfinite(v[i]):
            raise NonFiniteEntry(i, 0, float(v[i]))
        raise NegativeEntry(i, 0, float(v[i]))
    total = float(v.sum())
    if abs(total - 1.0) > vector_sum_tol:
        raise VectorSumViolation(total)
    return ProbabilityVector(v)


def identity(n: int) -> StochasticMatrix:
    return StochasticMatrix(np.eye(n))


def _row(v) -> np.ndarray:
    return np.asarray(v, dtype=float).reshape(-1)


def vec_mat_mul(v, P: StochasticMatrix) -> np.ndarray:
    """Left multiplication ``v P`` of a row vector by a stochastic matrix."""
    v = _row(v)
    a = np.asarray(P)
    if v.shape[0] != a.shape[0]:
        raise DimensionMismatch(v.shape[0], a.shape[0])
    return v @ a


def mat_mul(A: StochasticMatrix, B: StochasticMatrix) -> StochasticMatrix:
    a, b = np.asarray(A), np.asarray(B)
    if a.shape != b.shape:
        raise DimensionMismatch(a.shape, b.shape)
    return StochasticMatrix(a @ b)


def matrix_power(P: StochasticMatrix, k: int) -> StochasticMatrix:
    """``P**k`` by repeated multiplication (k >= 0); used by test oracles."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = identity(P.n)
    for _ in range(k):
        result = mat_mul(result, P)
    return result


def residual_norm(v, P: StochasticMatrix) -> float:
    """Infinity norm of ``vP - v``; zero exactly at fixed points."""
    v = _row(v)
    return float(np.max(np.abs(vec_mat_mul(v, P) - v)))
