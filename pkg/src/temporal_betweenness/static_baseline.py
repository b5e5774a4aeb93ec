"""Brandes betweenness on the aggregated static digraph.

Unnormalized directed convention, summed over ordered pairs s != v != z,
matching how the temporal measure sums ordered pairs.  Used for the
static-reduction comparison: a temporal graph with every arc at t = 1
collapses to its aggregate, and non-strict passive shortest temporal
betweenness must agree with this baseline.
"""

from __future__ import annotations

from collections import deque

from .temporal_graph import StaticGraph

__all__ = ["brandes_static"]


def brandes_static(g: StaticGraph) -> dict[int, float]:
    """B(v) = sum over ordered pairs of the shortest-path fractions through v."""
    n = g.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in sorted(g.edges):
        adj[u].append(v)

    B = {v: 0.0 for v in range(n)}
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1
        order: list[int] = []
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        delta = [0.0] * n
        for w in reversed(order):
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                B[w] += delta[w]
    return B
