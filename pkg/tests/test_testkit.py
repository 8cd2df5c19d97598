import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stationary.core import validate
from stationary.errors import InvalidSpec
from stationary.irreducibility import is_irreducible
from stationary.testkit import IRREDUCIBLE_KINDS, KINDS, FixtureSpec, generate, irreducible_pool


def test_cycle_four():
    expected = np.zeros((4, 4))
    expected[[0, 1, 2, 3], [1, 2, 3, 0]] = 1.0
    assert np.array_equal(np.asarray(generate(FixtureSpec("cycle", 4))), expected)


def test_reducible_blocks_four():
    assert not is_irreducible(generate(FixtureSpec("reducible_blocks", 4, seed=0))).verdict


def test_random_dense_six():
    P = generate(FixtureSpec("random_dense", 6, seed=42))
    validate(np.asarray(P), row_sum_tol=1e-9)
    assert (np.asarray(P) > 0).all()
    assert is_irreducible(P).verdict


@pytest.mark.parametrize("kwargs", [
    dict(kind="bogus", n=3), dict(kind="cycle", n=0), dict(kind="cycle", n=3, coupling=1.5),
    dict(kind="cycle", n=3, coupling=-0.1), dict(kind="reducible_blocks", n=1),
    dict(kind="near_reducible", n=1), dict(kind="cycle", n=3, seed=-1),
])
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpec):
        FixtureSpec(**kwargs)


@settings(max_examples=200)
@given(st.sampled_from(KINDS), st.integers(2, 16), st.integers(0, 99))
def test_kind_guarantees(kind, n, seed):
    spec = FixtureSpec(kind, n, seed)
    P = generate(spec)
    a = np.asarray(P)
    validate(a, row_sum_tol=1e-9)
    assert is_irreducible(P).verdict == (kind in IRREDUCIBLE_KINDS)
    assert generate(spec) == P
    if kind == "doubly_stochastic":
        assert np.allclose(a.sum(axis=0), 1.0, atol=1e-12)
    if kind == "random_sparse_irreducible":
        # every row keeps >= 0.1 on its planted cycle edge
        assert (np.sort(a, axis=1)[:, -1] >= 0.1).all()
    if kind == "near_reducible":
        sizes = [i for i in range(1, n) if np.all(a[:i, i:] > 0) and np.allclose(a[:i, i:].sum(axis=1), 1e-6)]
        assert len(sizes) == 1


def test_single_state_kinds():
    for kind in ("random_dense", "random_sparse_irreducible", "cycle", "doubly_stochastic"):
        assert generate(FixtureSpec(kind, 1)).tolist() == [[1.0]]


def test_coupling_zero_is_reducible():
    assert not is_irreducible(generate(FixtureSpec("near_reducible", 6, 1, coupling=0.0))).verdict


def test_pool_is_deterministic():
    assert irreducible_pool(30, seed=5) == irreducible_pool(30, seed=5)
    assert all(2 <= s.n <= 12 for s in irreducible_pool(100))
