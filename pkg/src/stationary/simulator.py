"""Monte Carlo trajectories of a finite chain, for checking computed
distributions against long-run occupation frequencies.

Random numbers come from SplitMix64 (Steele, Lea and Flood, 2014) used as a
counter-based generator: draw i of a stream with seed s is
``mix64(s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)``, mapped to [0, 1) by
keeping its top 53 bits. The stream is therefore bit-identical on every
platform, and whole blocks of draws can be produced with numpy.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .core import ProbabilityVector, StochasticMatrix
from .errors import IndexOutOfRange

DEFAULT_SEED = 20091013
MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_BLOCK = 1 << 16


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed: int, count: int, offset: int = 0) -> list[int]:
    """Reference scalar implementation: outputs offset .. offset+count-1."""
    return [mix64((seed + (offset + i + 1) * GOLDEN) & MASK64) for i in range(count)]


def uniforms(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Draws offset .. offset+count-1 of the stream as floats in [0, 1)."""
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    # uint64 arithmetic wraps modulo 2**64, which is exactly what we want
    z = np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def derive_seed(seed: int, index: int) -> int:
    """Independent stream seed for trajectory ``index`` of a batch."""
    return mix64((mix64(seed & MASK64) + (index + 1) * GOLDEN) & MASK64)


@dataclass(frozen=True)
class TrajectoryStats:
    steps: int
    start: int
    seed: int
    counts: tuple[int, ...]  # visits per state, counted after each transition


def row_cdfs(P: StochasticMatrix) -> list[list[float]]:
    cdf = np.cumsum(np.asarray(P), axis=1)
    cdf[:, -1] = 1.0
    return cdf.tolist()


def sample_trajectory(P: StochasticMatrix, start: int, steps: int, seed: int = DEFAULT_SEED) -> TrajectoryStats:
    """Run the chain for ``steps`` transitions from ``start``.

    The next state is the first j whose cumulative row sum exceeds the draw.
    """
    n = P.n
    if not 0 <= start < n:
        raise IndexOutOfRange(start, n)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    cdfs = row_cdfs(P)
    counts = [0] * n
    state = start
    right = bisect.bisect_right
    for offset in range(0, steps, _BLOCK):
        for x in uniforms(seed, min(_BLOCK, steps - offset), offset).tolist():
            state = right(cdfs[state], x)
            counts[state] += 1
    return TrajectoryStats(steps, start, seed, tuple(counts))


def merge(stats: list[TrajectoryStats]) -> TrajectoryStats:
    """Pool the counts of several trajectories (start/seed of the first)."""
    counts = np.sum([s.counts for s in stats], axis=0)
    return TrajectoryStats(sum(s.steps for s in stats), stats[0].start, stats[0].seed,
                           tuple(int(c) for c in counts))


def empirical_distribution(stats: TrajectoryStats) -> ProbabilityVector:
    if stats.steps < 1:
        raise ValueError("steps must be >= 1")
    return ProbabilityVector(np.asarray(stats.counts, dtype=float) / stats.steps)
