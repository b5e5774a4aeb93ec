"""Per-source temporal BFS: optimal walk costs and the predecessor DAG.

The search is a level-synchronous BFS over temporal nodes (v, t).  A state
is registered when a walk first arrives at v with its last transition at
time t; its predecessor set then collects every (u, t') from which an
optimal such arrival departs.  Under active visiting with unbounded waiting
the search additionally stamps later in-arc times of v as already covered
(a walk sitting at v needs no further transitions to be there), which
suppresses strictly longer exact arrivals; those can never matter because a
walk present since earlier dominates them at every subsequent moment.

With a finite waiting bound the suppression reasoning breaks down: an
arrival that looks dominated may be the only one able to depart late enough,
because the earlier arrival would have to overstay its bound.  A stamped
search then reports unreachable targets that are in fact reachable.  For
that reason stamps are only applied when the waiting bound covers the whole
horizon; bounded-waiting active searches run unstamped and leave the
domination bookkeeping to the counting layer.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .errors import ConfigError
from .temporal_graph import TemporalGraph, VariantConfig

INF = math.inf

#: Sentinel predecessor marking source initialization (the empty walk).
NIL = (-1, -1)


@dataclass(frozen=True)
class PredecessorData:
    """Output of one temporal BFS: costs, predecessor sets, instrumentation.

    dist maps v -> {t: length} for every temporal node with a finite cost,
    including waiting stamps (finite dist, empty predecessor set).  pre maps
    v -> {t: frozenset of (u, t')} with NIL marking source initialization;
    the temporal nodes with a nonempty predecessor set are exactly the
    vertices of the predecessor graph.
    """

    source: int
    n: int
    T: int
    config: VariantConfig
    dist: dict[int, dict[int, int]]
    pre: dict[int, dict[int, frozenset]]
    init_times: tuple[int, ...]
    enqueue_order: tuple[tuple[int, int], ...]
    enqueue_counts: dict[tuple[int, int], int]
    relax_ops: int

    def cost(self, v: int, t: int) -> float:
        """dist[v][t]: optimal exact-arrival length, or inf."""
        return self.dist.get(v, {}).get(t, INF)

    def preds(self, v: int, t: int) -> frozenset:
        return self.pre.get(v, {}).get(t, frozenset())

    def is_vertex(self, v: int, t: int) -> bool:
        """Predecessor-graph membership (stamps have empty pre and don't count)."""
        return bool(self.pre.get(v, {}).get(t))

    def vertex_times(self, v: int) -> tuple[int, ...]:
        """Sorted times at which v is a predecessor-graph vertex."""
        row = self.pre.get(v)
        if not row:
            return ()
        return tuple(sorted(t for t, p in row.items() if p))

    def arrival_items(self):
        """(v, t, length) for every predecessor-graph vertex, in enqueue order."""
        for v, t in self.enqueue_order:
            if self.is_vertex(v, t):
                yield v, t, self.dist[v][t]


def temporal_bfs(g: TemporalGraph, s: int, cfg: VariantConfig) -> PredecessorData:
    """Predecessor graph of source s under cfg.

    Foremost reuses the plain shortest passive search (the lexicographic
    cost only changes which arrivals count as optimal, not which walks
    exist).  Every temporal node is enqueued at most once; unreachable ones
    simply keep an infinite cost.
    """
    if not 0 <= s < g.n:
        raise ConfigError(f"source {s} is not a node id of {g!r}")
    T = g.T
    k = cfg.effective_k(T)
    strict = cfg.strict
    # Waiting stamps are sound only when the bound never binds (see module
    # docstring); bounded-waiting active searches explore unstamped.
    stamps = cfg.is_active and k >= T

    out_arcs = g.out_arcs
    in_times = g.in_times
    out_times = [[t for t, _ in row] for row in out_arcs]

    dist: dict[int, dict[int, int]] = {v: {} for v in range(g.n)}
    pre: dict[int, dict[int, set]] = {v: {} for v in range(g.n)}
    enqueue_counts: dict[tuple[int, int], int] = {}
    enqueue_order: list[tuple[int, int]] = []

    queue: list[tuple[int, int]] = []
    init_times = tuple(sorted({t for t, _ in out_arcs[s]}))
    for t in init_times:
        dist[s][t] = 0
        pre[s][t] = {NIL}
        queue.append((s, t))
        enqueue_counts[(s, t)] = 1
        enqueue_order.append((s, t))

    relax_ops = 0
    level = 1
    while queue:
        nxt: list[tuple[int, int]] = []
        for a, t in queue:
            times = out_times[a]
            if a == s:
                # walks depart the source at their own initialization time;
                # re-arrivals at s never relay (they have no out-arc at their
                # arrival time, else that time would have been initialized)
                lo = bisect_left(times, t)
                hi = bisect_right(times, t)
            else:
                lo = bisect_right(times, t) if strict else bisect_left(times, t)
                hi = bisect_right(times, t + k)
            for i in range(lo, hi):
                t1, b = out_arcs[a][i]
                relax_ops += 1
                d = dist[b].get(t1, INF)
                if d == INF or (d >= level and not pre[b].get(t1)):
                    dist[b][t1] = level
                    pre[b][t1] = set()
                    nxt.append((b, t1))
                    enqueue_counts[(b, t1)] = enqueue_counts.get((b, t1), 0) + 1
                    enqueue_order.append((b, t1))
                    if stamps:
                        row = in_times[b]
                        jlo = bisect_right(row, t1)
                        jhi = bisect_right(row, t1 + k)
                        for j in range(jlo, jhi):
                            r = row[j]
                            if dist[b].get(r, INF) > level:
                                dist[b][r] = level
                                pre[b].setdefault(r, set())
                if dist[b].get(t1) == level:
                    pre[b][t1].add((a, t))
        level += 1
        queue = nxt

    frozen_pre = {v: {t: frozenset(p) for t, p in row.items()} for v, row in pre.items()}
    return PredecessorData(
        source=s,
        n=g.n,
        T=T,
        config=cfg,
        dist=dist,
        pre=frozen_pre,
        init_times=init_times,
        enqueue_order=tuple(enqueue_order),
        enqueue_counts=enqueue_counts,
        relax_ops=relax_ops,
    )


def successors(pd: PredecessorData) -> dict[tuple[int, int], frozenset]:
    """Invert the predecessor sets: (w,t') in successors[(v,t)] iff (v,t) in pre[w][t'].

    NIL sentinels are excluded; every predecessor-graph vertex gets an entry
    (sinks map to the empty set).
    """
    table: dict[tuple[int, int], set] = {}
    for v, row in pd.pre.items():
        for t, preds in row.items():
            if not preds:
                continue
            table.setdefault((v, t), set())
            for p in preds:
                if p != NIL:
                    table.setdefault(p, set()).add((v, t))
    return {st: frozenset(succ) for st, succ in table.items()}
