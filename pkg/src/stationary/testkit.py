"""Deterministic fixture matrices for tests, scripts and ``stationary generate``.

Every generator is a pure function of (kind, n, seed, coupling); randomness
comes from ``numpy.random.default_rng(seed)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import StochasticMatrix, validate
from .errors import InvalidSpec

KINDS = (
    "random_dense",
    "random_sparse_irreducible",
    "cycle",
    "doubly_stochastic",
    "reducible_blocks",
    "near_reducible",
)
IRREDUCIBLE_KINDS = ("random_dense", "random_sparse_irreducible", "cycle", "doubly_stochastic", "near_reducible")


@dataclass(frozen=True)
class FixtureSpec:
    kind: str
    n: int
    seed: int = 0
    coupling: float = 1e-6  # cross-block mass, near_reducible only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown fixture kind {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec("n must be >= 1")
        if self.seed < 0:
            raise InvalidSpec("seed must be nonnegative")
        if not 0.0 <= self.coupling <= 1.0:
            raise InvalidSpec("coupling must lie in [0, 1]")
        if self.kind in ("reducible_blocks", "near_reducible") and self.n < 2:
            raise InvalidSpec(f"{self.kind} needs n >= 2")


def _normalize(a: np.ndarray) -> np.ndarray:
    return a / a.sum(axis=1, keepdims=True)


def _dense(rng, n: int) -> np.ndarray:
    # 1 - random() lies in (0, 1], so every entry is strictly positive
    return _normalize(1.0 - rng.random((n, n)))


def _cycle(n: int) -> np.ndarray:
    return np.roll(np.eye(n), 1, axis=1)


def _sparse_irreducible(rng, n: int) -> np.ndarray:
    order = rng.permutation(n)
    hamiltonian = np.zeros((n, n))
    hamiltonian[order, np.roll(order, -1)] = 1.0
    support = rng.random((n, n)) < min(1.0, 2.0 / n)
    weights = np.where(support, rng.random((n, n)), 0.0) + hamiltonian * rng.random((n, n))
    # the planted cycle keeps at least 0.1 of each row's mass
    return 0.1 * hamiltonian + 0.9 * _normalize(weights + 1e-3 * hamiltonian)


def _doubly_stochastic(rng, n: int) -> np.ndarray:
    # the n-cycle in the mixture guarantees irreducibility
    perms = [_cycle(n)] + [np.eye(n)[rng.permutation(n)] for _ in range(n)]
    weights = rng.dirichlet(np.ones(len(perms)))
    return sum(w * m for w, m in zip(weights, perms))


def _block_sizes(rng, n: int, blocks: int) -> list[int]:
    cuts = np.sort(rng.choice(np.arange(1, n), size=blocks - 1, replace=False))
    return np.diff(np.concatenate([[0], cuts, [n]])).tolist()


def _reducible_blocks(rng, n: int) -> np.ndarray:
    blocks = int(rng.integers(2, min(n, 3) + 1))
    a = np.zeros((n, n))
    start = 0
    for size in _block_sizes(rng, n, blocks):
        a[start:start + size, start:start + size] = _dense(rng, size)
        start += size
    return a


def _near_reducible(rng, n: int, coupling: float) -> np.ndarray:
    left, right = _block_sizes(rng, n, 2)
    a = np.zeros((n, n))
    a[:left, :left] = (1.0 - coupling) * _dense(rng, left)
    a[left:, left:] = (1.0 - coupling) * _dense(rng, right)
    a[:left, left:] = coupling / right
    a[left:, :left] = coupling / left
    return a


def generate(spec: FixtureSpec) -> StochasticMatrix:
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    if spec.kind == "random_dense":
        a = _dense(rng, n)
    elif spec.kind == "random_sparse_irreducible":
        a = _sparse_irreducible(rng, n)
    elif spec.kind == "cycle":
        a = _cycle(n)
    elif spec.kind == "doubly_stochastic":
        a = _doubly_stochastic(rng, n)
    elif spec.kind == "reducible_blocks":
        a = _reducible_blocks(rng, n)
    else:
        a = _near_reducible(rng, n, spec.coupling)
    return validate(a, row_sum_tol=1e-9)


def irreducible_pool(count: int, n_min: int = 2, n_max: int = 12, seed: int = 0,
                     kinds=("random_dense", "random_sparse_irreducible", "doubly_stochastic")) -> list[FixtureSpec]:
    """``count`` specs cycling through ``kinds`` with n drawn from [n_min, n_max]."""
    rng = np.random.default_rng(seed)
    return [
        FixtureSpec(kinds[i % len(kinds)], int(rng.integers(n_min, n_max + 1)), seed=int(rng.integers(2**32)))
        for i in range(count)
    ]
