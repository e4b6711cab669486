"""Structural covariates: mean shortest-path length and eigenvector centrality."""

from __future__ import annotations

from collections import deque
from typing import Iterable

import numpy as np

from .errors import DomainError, NumericError, ParameterError
from .graph import Network, is_connected


def bfs_distances(g: Network, source: int) -> list[int]:
    """Hop distances from ``source``; ``-1`` marks unreachable nodes."""
    dist = [-1] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def distance_sum(g: Network) -> int:
    """Sum of shortest-path distances over unordered distinct pairs."""
    total = 0
    for s in range(g.node_count):
        d = bfs_distances(g, s)
        if min(d) < 0:
            raise DomainError("graph is disconnected; path length undefined")
        total += sum(d)
    return total // 2


def mean_path_length(g: Network) -> float:
    """Average hop distance over all ``C(n, 2)`` unordered node pairs."""
    n = g.node_count
    if n < 2:
        raise DomainError("mean path length needs at least 2 nodes")
    return distance_sum(g) / (n * (n - 1) // 2)


def eigenvector_centrality(g: Network, tol: float = 1e-10, max_iter: int = 10000) -> np.ndarray:
    """Unit-norm Perron eigenvector of the adjacency matrix.

    Power iteration runs on ``A + I``: same eigenvectors as ``A``, but the
    spectrum is shifted so bipartite graphs (stars, even cycles) no longer
    have a competing ``-lambda_max`` eigenvalue and the iteration settles.
    Stops once successive iterates differ by less than ``tol`` in max-norm.
    """
    n = g.node_count
    if n < 2:
        raise DomainError("eigenvector centrality needs at least 2 nodes")
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    if not is_connected(g):
        raise DomainError("graph is disconnected; Perron vector is not unique")
    a = g.adjacency_matrix()
    a[np.diag_indices(n)] += 1.0
    v = np.full(n, 1.0 / np.sqrt(n))
    resid = np.inf
    for _ in range(max_iter):
        w = a @ v
        w /= np.linalg.norm(w)
        resid = float(np.max(np.abs(w - v)))
        v = w
        if resid < tol:
            return v
    raise NumericError(f"power iteration did not converge in {max_iter} iterations "
                       f"(last residual {resid:.3e})")


def conspirator_centrality_sum(scores: np.ndarray, ids: Iterable[int]) -> float:
    ids = list(ids)
    n = len(scores)
    for i in ids:
        if not 0 <= i < n:
            raise ParameterError(f"node id {i} out of range for {n} nodes")
    return float(sum(scores[i] for i in ids))

