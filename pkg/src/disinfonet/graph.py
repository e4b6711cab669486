"""Undirected simple graphs and the Watts-Strogatz / Barabasi-Albert generators."""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ParameterError

# Upper bound on rejection-sampling draws when rewiring a single WS edge.
REWIRE_TRIES = 100


@dataclass(frozen=True)
class Network:
    """Immutable undirected simple graph on nodes ``0..node_count-1``.

    ``edges`` holds canonical ``(u, v)`` pairs with ``u < v``, sorted.
    ``adjacency`` is derived from ``edges`` at construction.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ParameterError(f"node_count must be positive, got {self.node_count}")
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "Network":
        """Build a network, canonicalising and validating ``edges``."""
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParameterError(f"self-loop on node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ParameterError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            pair = (u, v) if u < v else (v, u)
            if pair in canon:
                raise ParameterError(f"duplicate edge {pair}")
            canon.add(pair)
        return cls(node_count, tuple(sorted(canon)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.node_count, self.node_count))
        if self.edges:
            e = np.array(self.edges)
            a[e[:, 0], e[:, 1]] = 1.0
            a[e[:, 1], e[:, 0]] = 1.0
        return a


@dataclass(frozen=True)
class WsParams:
    n: int
    k: int = 4
    beta: float = 0.1

    def __post_init__(self) -> None:
        if self.k <= 0 or self.k % 2:
            raise ParameterError(f"ws k must be a positive even integer, got {self.k}")
        if self.k >= self.n:
            raise ParameterError(f"ws k must be < n, got k={self.k} n={self.n}")
        if not 0.0 <= self.beta <= 1.0:
            raise ParameterError(f"ws beta must lie in [0, 1], got {self.beta}")


@dataclass(frozen=True)
class BaParams:
    n: int
    m: int = 2

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ParameterError(f"ba m must be >= 1, got {self.m}")
        if self.n < self.m + 1:
            raise ParameterError(f"ba needs n >= m + 1, got n={self.n} m={self.m}")


def generate_ws(params: WsParams, rng: np.random.Generator) -> Network:
    """Watts-Strogatz graph: ring lattice, then per-edge rewiring of the far end.

    Lattice edges are visited hop by hop (all ``(i, i+1)`` first, then
    ``(i, i+2)``, ...). A rewired edge ``(i, j)`` becomes ``(i, w)`` with
    ``w`` uniform over all nodes; self-loops and existing edges are rejected
    and the edge is left in place if ``REWIRE_TRIES`` draws all fail.
    """
    n, half = params.n, params.k // 2
    nbrs: list[set[int]] = [set() for _ in range(n)]
    lattice = [(i, (i + d) % n) for d in range(1, half + 1) for i in range(n)]
    for i, j in lattice:
        nbrs[i].add(j)
        nbrs[j].add(i)
    if params.beta > 0.0:
        for i, j in lattice:
            if rng.random() >= params.beta:
                continue
            for _ in range(REWIRE_TRIES):
                w = int(rng.integers(n))
                if w != i and w not in nbrs[i]:
                    nbrs[i].discard(j)
                    nbrs[j].discard(i)
                    nbrs[i].add(w)
                    nbrs[w].add(i)
                    break
    edges = tuple(sorted((u, v) for u in range(n) for v in nbrs[u] if u < v))
    return Network(n, edges)


def generate_ba(params: BaParams, rng: np.random.Generator) -> Network:
    """Barabasi-Albert graph grown from a complete graph on ``m + 1`` nodes.

    Each new node picks ``m`` distinct targets with probability
    proportional to their current degree.
    """
    n, m = params.n, params.m
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    # Each node appears in ``pool`` once per incident edge end.
    pool: list[int] = [x for e in edges for x in e]
    for new in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(pool[int(rng.integers(len(pool)))])
        for t in sorted(targets):
            edges.append((t, new))
            pool.extend((t, new))
    return Network(n, tuple(sorted(edges)))


def generate(topology: str, n: int, rng: np.random.Generator, *, ws_k: int = 4,
             ws_beta: float = 0.1, ba_m: int = 2) -> Network:
    if topology == "ws":
        return generate_ws(WsParams(n, ws_k, ws_beta), rng)
    if topology == "ba":
        return generate_ba(BaParams(n, ba_m), rng)
    raise ParameterError(f"unknown topology {topology!r} (expected 'ws' or 'ba')")


def is_connected(g: Network) -> bool:
    seen = [False] * g.node_count
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                reached += 1
                queue.append(v)
    return reached == g.node_count


def write_edge_list(g: Network, path: str | Path) -> None:
    """Write the canonical ``src,dst`` edge list (src < dst, sorted)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["src", "dst"])
        w.writerows(g.edges)


def read_edge_list(path: str | Path, node_count: int | None = None) -> Network:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    edges = [(int(r["src"]), int(r["dst"])) for r in rows]
    if node_count is None:
        node_count = 1 + max((max(e) for e in edges), default=0)
    return Network.from_edges(node_count, edges)
