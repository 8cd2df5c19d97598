"""Irreducibility of a stochastic matrix via reachability in its support graph.

``P^k(i, j) > 0`` exactly when the support graph has a walk of length k from
i to j, so the question is settled combinatorially and never by forming
numeric powers (tiny products would underflow).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .core import StochasticMatrix
from .errors import IndexOutOfRange


@dataclass(frozen=True, eq=False)
class AdjacencyGraph:
    n: int
    edges: np.ndarray  # bool (n, n), edges[i, j] iff p(i, j) > threshold

    def successors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.edges[i])

    def reverse(self) -> "AdjacencyGraph":
        return AdjacencyGraph(self.n, self.edges.T.copy())

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in np.argwhere(self.edges)}


def build_graph(P: StochasticMatrix, pos_threshold: float = 0.0) -> AdjacencyGraph:
    if pos_threshold < 0:
        raise ValueError("pos_threshold must be nonnegative")
    a = np.asarray(P)
    edges = a > pos_threshold
    edges.setflags(write=False)
    return AdjacencyGraph(a.shape[0], edges)


def _walk_lengths(graph: AdjacencyGraph, source: int) -> list[Optional[int]]:
    """Shortest walk length >= 1 from ``source`` to every state (None if none)."""
    dist: list[Optional[int]] = [None] * graph.n
    queue = deque()
    for j in graph.successors(source):
        j = int(j)
        dist[j] = 1
        queue.append(j)
    while queue:
        i = queue.popleft()
        for j in graph.successors(i):
            j = int(j)
            if dist[j] is None:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def _reachable(graph: AdjacencyGraph, source: int) -> np.ndarray:
    seen = np.zeros(graph.n, dtype=bool)
    seen[source] = True
    queue = deque([source])
    while queue:
        i = queue.popleft()
        for j in graph.successors(i):
            if not seen[j]:
                seen[j] = True
                queue.append(int(j))
    return seen


@dataclass(eq=False)
class IrreducibilityCertificate:
    """Verdict on strong connectivity plus the evidence for it.

    For an irreducible matrix, ``min_powers[i][j]`` is the least k >= 1 with
    ``P^k(i, j) > 0``; it costs n breadth-first searches and is only computed
    on first access. For a reducible matrix, ``witness`` is a pair (i, j)
    with no path from i to j.
    """

    verdict: bool
    witness: Optional[tuple[int, int]] = None
    graph: Optional[AdjacencyGraph] = field(default=None, repr=False)

    def __bool__(self):
        return self.verdict

    @cached_property
    def min_powers(self) -> Optional[list[list[int]]]:
        if not self.verdict or self.graph is None:
            return None
        return [_walk_lengths(self.graph, i) for i in range(self.graph.n)]

    def to_dict(self, full: bool = False) -> dict:
        out: dict = {"irreducible": self.verdict}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if full and self.verdict:
            out["min_powers"] = self.min_powers
        return out


def is_irreducible(P: StochasticMatrix, pos_threshold: float = 0.0) -> IrreducibilityCertificate:
    graph = build_graph(P, pos_threshold)
    forward = _reachable(graph, 0)
    if not forward.all():
        return IrreducibilityCertificate(False, (0, int(np.argmin(forward))), graph)
    backward = _reachable(graph.reverse(), 0)
    if not backward.all():
        return IrreducibilityCertificate(False, (int(np.argmin(backward)), 0), graph)
    return IrreducibilityCertificate(True, None, graph)


def min_positive_power(P: StochasticMatrix, i: int, j: int, pos_threshold: float = 0.0) -> Optional[int]:
    """Smallest k >= 1 with ``P^k(i, j) > 0``, or None if j is unreachable from i."""
    n = P.n
    for idx in (i, j):
        if not 0 <= idx < n:
            raise IndexOutOfRange(idx, n)
    return _walk_lengths(build_graph(P, pos_threshold), i)[j]
