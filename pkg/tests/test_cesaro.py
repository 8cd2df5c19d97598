import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stationary.cesaro import (
    advance, cesaro_solve, initial_state, iterates, residual_bound, step, uniform,
)
from stationary.core import identity, probability_vector, residual_norm, validate
from stationary.direct import solve_stationary_direct
from stationary.errors import DimensionMismatch, MaxIterationsExceeded
from stationary.testkit import FixtureSpec, generate

from conftest import irreducible_matrices, stochastic_matrices

# period 2, stationary distribution (1/4, 1/2, 1/4)
BIPARTITE = [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]]


def period_three():
    a = np.zeros((6, 6))
    a[0, [2, 3]] = [0.3, 0.7]
    a[1, [2, 3]] = [0.9, 0.1]
    a[2, [4, 5]] = [0.5, 0.5]
    a[3, [4, 5]] = [0.2, 0.8]
    a[4, [0, 1]] = [0.6, 0.4]
    a[5, [0, 1]] = [0.1, 0.9]
    return validate(a)


def test_residual_bound_values():
    assert residual_bound(1) == 2.0
    assert residual_bound(4) == 0.5
    assert residual_bound(2000) == 0.001
    with pytest.raises(ValueError):
        residual_bound(0)


def test_step_examples(swap, two_state):
    s = step(initial_state(swap), swap)
    assert s.k == 2 and s.average.tolist() == [0.5, 0.5]
    s1 = initial_state(identity(2))
    s2 = step(s1, identity(2))
    assert s2.k == 2 and np.array_equal(s2.average, s1.average)
    s = step(initial_state(two_state), two_state)
    # uP = (0.65, 0.35) by hand; v_2 = (u + uP)/2
    assert np.allclose(s.average, [0.575, 0.425], atol=1e-15)
    assert np.allclose(s.power_vec, [0.65, 0.35] @ np.asarray(two_state), atol=1e-15)


def test_step_dimension_mismatch(swap):
    with pytest.raises(DimensionMismatch):
        step(initial_state(identity(3)), swap)


def test_solve_examples(swap, two_state):
    pi, rep = cesaro_solve(swap, eps=1e-8)
    assert pi.tolist() == [0.5, 0.5] and rep.iterations == 1 and rep.residual == 0.0
    pi, rep = cesaro_solve(identity(3), eps=1e-8)
    assert np.allclose(pi.entries, 1 / 3, atol=1e-16) and rep.iterations == 1
    pi, rep = cesaro_solve(two_state, eps=1e-10)
    assert np.max(np.abs(pi.entries - [2 / 3, 1 / 3])) <= 1e-6
    assert rep.residual <= 1e-10 and rep.method == "cesaro"


def test_first_k_for_two_state_chain(two_state):
    # the chain's second eigenvalue is 0.1, so uP^k - u = (pi - u)(1 - 0.1^k)
    # and the residual is (1 - 0.1^k) / (6k); first k with that <= eps:
    eps = 1e-10
    k = math.floor(1 / (6 * eps)) - 2
    while (1 - 0.1**k) / (6 * k) > eps:
        k += 1
    _, rep = cesaro_solve(two_state, eps=eps)
    # near k ~ 1.7e9 the residual moves ~6e-20 per step, below its rounding
    # noise (~1e-17), so the crossing is only resolved to ~1e-7 relative
    assert abs(rep.iterations - k) <= 1e-6 * k


def test_max_iterations(two_state):
    with pytest.raises(MaxIterationsExceeded) as info:
        cesaro_solve(two_state, eps=1e-10, max_k=1000)
    assert info.value.k == 1000 and info.value.residual > 1e-10


def test_default_cap_is_reachable(two_state):
    # the guaranteed stop ceil(2/eps) is never below the cap
    _, rep = cesaro_solve(two_state, eps=1e-3, skip=False)
    assert rep.iterations <= math.ceil(2 / 1e-3)


def test_bad_arguments(two_state):
    with pytest.raises(ValueError):
        cesaro_solve(two_state, eps=0)
    with pytest.raises(ValueError):
        cesaro_solve(two_state, max_k=0)


def check_trajectory(P, kmax):
    u = uniform(P.n)
    a = np.asarray(P)
    for state in iterates(P):
        if state.k > kmax:
            break
        assert residual_norm(state.average, P) <= residual_bound(state.k) + 1e-12
        lhs = state.average @ a - state.average
        assert np.max(np.abs(lhs - (state.power_vec - u) / state.k)) <= 5e-13
        probability_vector(state.average, vector_sum_tol=1e-12)


@settings(max_examples=15)
@given(stochastic_matrices(n_max=10, sparse=True))
def test_bound_and_telescoping(P):
    check_trajectory(P, 1000)


def test_bound_on_periodic_chains():
    check_trajectory(validate(BIPARTITE), 1000)
    check_trajectory(period_three(), 1000)


@settings(max_examples=30)
@given(stochastic_matrices(n_max=8, sparse=True), st.integers(0, 5000))
def test_advance_equals_repeated_steps(P, m):
    start = step(step(initial_state(P), P), P)
    jumped = advance(start, P, m)
    walked = start
    for _ in range(m):
        walked = step(walked, P)
    assert jumped.k == walked.k
    assert np.allclose(jumped.average, walked.average, atol=1e-13, rtol=0)
    assert np.allclose(jumped.power_vec, walked.power_vec, atol=1e-12, rtol=0)


@pytest.mark.parametrize("matrix", [
    [[0.7, 0.3], [0.6, 0.4]],
    BIPARTITE,
    [[0.9, 0.1, 0.0], [0.0, 0.5, 0.5], [0.3, 0.0, 0.7]],
    [[0.5, 0.5], [0.0, 1.0]],
])
@pytest.mark.parametrize("eps", [1e-3, 1e-5])
def test_skip_ahead_matches_plain_stepping(matrix, eps):
    P = validate(matrix)
    fast, fast_rep = cesaro_solve(P, eps=eps)
    slow, slow_rep = cesaro_solve(P, eps=eps, skip=False)
    assert fast_rep.iterations == slow_rep.iterations
    assert np.allclose(fast.entries, slow.entries, atol=1e-12, rtol=0)


@pytest.mark.parametrize("seed", range(6))
def test_skip_ahead_matches_plain_stepping_on_fixtures(seed):
    P = generate(FixtureSpec("random_sparse_irreducible", 3 + seed, seed))
    fast, fast_rep = cesaro_solve(P, eps=1e-4)
    slow, slow_rep = cesaro_solve(P, eps=1e-4, skip=False)
    assert fast_rep.iterations == slow_rep.iterations
    assert np.allclose(fast.entries, slow.entries, atol=1e-12, rtol=0)


@settings(max_examples=25)
@given(irreducible_matrices(n_max=12))
def test_agrees_with_direct(P):
    direct, _ = solve_stationary_direct(P)
    pi, rep = cesaro_solve(P, eps=1e-10)
    assert rep.residual <= 1e-10
    assert np.max(np.abs(pi.entries - direct.entries)) <= 1e-6


@pytest.mark.parametrize("n", range(2, 13))
def test_cycles_give_uniform(n):
    pi, rep = cesaro_solve(generate(FixtureSpec("cycle", n)))
    assert np.max(np.abs(pi.entries - 1 / n)) <= 1e-9


@pytest.mark.parametrize("P,expected", [
    (validate(BIPARTITE), [0.25, 0.5, 0.25]),
    (period_three(), None),
])
def test_periodic_chains_converge(P, expected):
    # plain powers from a point mass never settle on these chains
    x = np.eye(P.n)[0]
    a = np.asarray(P)
    for _ in range(500):
        x = x @ a
    assert residual_norm(x, P) > 0.05
    pi, _ = cesaro_solve(P)
    if expected is None:
        expected = solve_stationary_direct(P)[0].entries
    assert np.max(np.abs(pi.entries - expected)) <= 1e-6


@pytest.mark.parametrize("coupling,bound", [(1e-2, 1e-6), (1e-4, 1e-6), (1e-6, 1e-3)])
def test_near_reducible_error_scales_with_mixing_time(coupling, bound):
    # small residual does not mean small error: at coupling c the error of the
    # first v_k below eps is about eps / (2c), hence ~5e-5 at c = 1e-6
    worst = 0.0
    for seed in range(12):
        P = generate(FixtureSpec("near_reducible", 2 + seed % 11, seed, coupling))
        pi, _ = cesaro_solve(P, eps=1e-10)
        worst = max(worst, np.max(np.abs(pi.entries - solve_stationary_direct(P)[0].entries)))
    assert worst <= bound
    assert worst <= 1e-10 / coupling
