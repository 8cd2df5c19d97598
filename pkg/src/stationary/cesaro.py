"""Stationary distribution as the limit of Cesaro averages.

Starting from the uniform row vector u, the k-th average is

    v_k = (u + uP + ... + uP^(k-1)) / k

and telescoping gives v_k P - v_k = (uP^k - u) / k, so the residual
||v_k P - v_k||_inf never exceeds 2/k. The solver returns the first v_k whose
residual is at most ``eps``. This works for periodic chains too, where the
plain powers uP^k oscillate forever.

Residuals shrink like 1/k, so eps = 1e-10 typically needs k around 1e9.
:func:`cesaro_solve` therefore skips over ranges of k that provably cannot
meet the tolerance (see :func:`_first_candidate`) and crosses them with
:func:`advance`, which sums blocks of powers by binary doubling. The k and
v_k it returns are the ones plain stepping would have produced.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import ProbabilityVector, StochasticMatrix, probability_vector, residual_norm
from .direct import SolveReport, verify_strict_positivity
from .errors import DimensionMismatch, MaxIterationsExceeded

DEFAULT_EPS = 1e-10

# Below this many provably-failing steps, plain stepping beats a jump.
_MIN_JUMP = 32


@dataclass(frozen=True, eq=False)
class CesaroState:
    k: int
    power_vec: np.ndarray  # u P^k
    running_sum: np.ndarray  # u + uP + ... + uP^(k-1), less `compensation`
    average: np.ndarray  # (running_sum + compensation) / k
    compensation: np.ndarray = None  # low-order bits lost from running_sum

    def __post_init__(self):
        if self.compensation is None:
            object.__setattr__(self, "compensation", np.zeros_like(self.running_sum))


def _accumulate(state: "CesaroState", term: np.ndarray, power_vec: np.ndarray, m: int) -> "CesaroState":
    # Neumaier summation: at k ~ 1e9 a plain running sum drifts by more than
    # the residual tolerance
    s = state.running_sum
    total = s + term
    lost = np.where(np.abs(s) >= np.abs(term), (s - total) + term, (term - total) + s)
    compensation = state.compensation + lost
    k = state.k + m
    return CesaroState(k, power_vec, total, (total + compensation) / k, compensation)


def uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def initial_state(P: StochasticMatrix) -> CesaroState:
    u = uniform(P.n)
    return CesaroState(1, u @ np.asarray(P), u.copy(), u.copy())


def step(state: CesaroState, P: StochasticMatrix) -> CesaroState:
    a = np.asarray(P)
    if state.power_vec.shape[0] != a.shape[0]:
        raise DimensionMismatch(state.power_vec.shape[0], a.shape[0])
    return _accumulate(state, state.power_vec, state.power_vec @ a, 1)


def _power_and_partial_sum(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (P^m, I + P + ... + P^(m-1)) by binary doubling."""
    n = a.shape[0]
    power, partial = np.eye(n), np.zeros((n, n))
    j = 0
    for bit in bin(m)[2:]:
        # (P^j, S_j) -> (P^2j, S_2j) with S_2j = S_j + S_j P^j
        partial = partial + partial @ power
        power = power @ power
        j *= 2
        if bit == "1":
            # S_(j+1) = I + S_j P
            partial = np.eye(n) + partial @ a
            power = power @ a
            j += 1
        # squaring doubles any row-sum defect; rows of P^j sum to 1, of S_j to j
        power /= power.sum(axis=1, keepdims=True)
        partial *= j / partial.sum(axis=1, keepdims=True)
    return power, partial


def advance(state: CesaroState, P: StochasticMatrix, m: int) -> CesaroState:
    """Equivalent to applying :func:`step` ``m`` times, in O(n^3 log m)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return state
    a = np.asarray(P)
    if state.power_vec.shape[0] != a.shape[0]:
        raise DimensionMismatch(state.power_vec.shape[0], a.shape[0])
    power, partial = _power_and_partial_sum(a, m)
    return _accumulate(state, state.power_vec @ partial, state.power_vec @ power, m)


def iterates(P: StochasticMatrix) -> Iterator[CesaroState]:
    """Yield the states for k = 1, 2, 3, ... by plain stepping."""
    state = initial_state(P)
    while True:
        yield state
        state = step(state, P)


def residual_bound(k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2.0 / k


def _first_candidate(history, eps: float, slack: float) -> int:
    """Smallest k' beyond the window that might still satisfy the tolerance.

    ``history`` holds (s, uP^s, ||uP^s - u||_inf) for consecutive s ending at
    the current k, all of which already failed. Write g(s) = ||uP^s - u||_inf;
    the residual at s is g(s)/s. Stochastic matrices do not expand the l1
    norm of row vectors, so for every p the gap ||uP^(t+p) - uP^t||_1 is
    non-increasing in t. With e bounding it from the window onwards,
    g(s + j p) >= g(s) - j e, and k' = s + j p fails whenever
    g(s) - j e > eps (s + j p). Taking the best p over the window handles
    periodic chains, whose gaps only decay along multiples of the period.
    """
    k = history[-1][0]
    best = k + 1
    xk = history[-1][1]
    for p in range(1, len(history)):
        e = float(np.abs(xk - history[-1 - p][1]).sum()) + slack
        first = None
        for s, _, g in list(history)[-p:]:
            t = (g - slack - eps * s) / (e + eps * p)
            j = max(math.ceil(t), 1) if t < 1e18 else 10**18
            pos = s + j * p
            first = pos if first is None else min(first, pos)
        best = max(best, first)
    return best


def cesaro_solve(
    P: StochasticMatrix,
    eps: float = DEFAULT_EPS,
    max_k: Optional[int] = None,
    skip: bool = True,
    positivity_tol: float = 0.0,
) -> tuple[ProbabilityVector, SolveReport]:
    """First Cesaro average v_k with ||v_k P - v_k||_inf <= eps.

    Stops by k = ceil(2/eps) at the latest. Raises MaxIterationsExceeded if
    ``max_k`` is reached first. ``skip=False`` forces one-step-at-a-time
    iteration, which is only practical for loose ``eps``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if max_k is None:
        max_k = max(10**7, math.ceil(2.0 / eps))
    if max_k < 1:
        raise ValueError("max_k must be >= 1")

    n = P.n
    u = uniform(n)
    slack = 64 * n * np.finfo(float).eps
    state = initial_state(P)
    history: deque = deque(maxlen=n + 1)
    while True:
        r = residual_norm(state.average, P)
        if r <= eps:
            break
        if state.k >= max_k:
            raise MaxIterationsExceeded(state.k, r)
        if not skip:
            state = step(state, P)
            continue
        history.append((state.k, state.power_vec, float(np.max(np.abs(state.power_vec - u)))))
        target = min(_first_candidate(history, eps, slack), max_k)
        m = target - state.k
        if m < _MIN_JUMP:
            state = step(state, P)
        else:
            state = advance(state, P, m)
            history.clear()

    margin = verify_strict_positivity(state.average, positivity_tol)
    pi = probability_vector(state.average)
    return pi, SolveReport("cesaro", state.k, r, margin, None)
