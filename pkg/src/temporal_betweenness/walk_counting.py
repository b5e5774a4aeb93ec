"""Optimal-walk counts over one source's predecessor graph.

Three granularities, all per source s:

* sigma_bar(v, t): optimal walks from s whose last transition happens at
  exactly t.  Under active visiting an arrival strictly longer than some
  earlier arrival at the same node counts as zero here — the node's cost at
  time t is set by the walk already present, so the late arrival is not
  optimal *at that temporal node* even though it is a perfectly valid walk.
* sigma(v, t): optimal walks present at v at time t.  Passive visiting has
  no notion of staying, so this equals sigma_bar; active visiting sums
  sigma_bar over the prefix of arrivals attaining the running-minimum
  length (presence by waiting is never bounded: only further transitions
  are subject to a restless bound, not sitting at the final node).
* sigma_pair(v): optimal s-v walks irrespective of arrival time — the
  denominator of every dependency share.

delta_base(v, t) is the endpoint contribution: the fraction of optimal s-v
walks that put v at (v, t), which is the pair-level analogue of the static
sigma_sv(v)/sigma_sv term.  It is zero at the source row (s is an endpoint
of every such pair, never an intermediate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvariantError
from .shortest_walks import NIL, PredecessorData
from .temporal_graph import VariantConfig

__all__ = ["WalkCounts", "count_exact", "count_total", "pair_counts_and_base", "compute_walk_counts"]


@dataclass(frozen=True)
class WalkCounts:
    """All counting tables for one source; keys absent mean zero."""

    source: int
    sigma_bar: dict[tuple[int, int], int]
    sigma: dict[tuple[int, int], int]
    sigma_pair: dict[int, int]
    delta_base: dict[tuple[int, int], float]
    c_overall: dict[int, object]


def count_exact(pd: PredecessorData) -> dict[tuple[int, int], int]:
    """Exact-arrival counts by the predecessor-sum recurrence.

    1 at source-initialized temporal nodes, sum over predecessors otherwise.
    Enqueue order is level order, so every predecessor is counted before its
    successors; a missing predecessor count would mean the predecessor graph
    is not acyclic, which is an internal invariant violation.
    """
    counts: dict[tuple[int, int], int] = {}
    for v, t in pd.enqueue_order:
        preds = pd.preds(v, t)
        if NIL in preds:
            counts[(v, t)] = 1
            continue
        try:
            counts[(v, t)] = sum(counts[p] for p in preds)
        except KeyError as exc:
            raise InvariantError(
                f"cycle in predecessor graph: {(v, t)} precedes its own predecessor {exc.args[0]}"
            ) from exc
    return counts


def _exact_arrivals(pd: PredecessorData, v: int) -> list[tuple[int, int]]:
    """(t, length) per predecessor-graph vertex of v, ascending in t.

    Source initializations appear with length 0: the empty walk occupies its
    (final) node s from the initialization on, so any re-arrival at s is
    dominated for visiting purposes just like a late arrival elsewhere.
    """
    return [(t, pd.dist[v][t]) for t in pd.vertex_times(v)]


def count_total(
    pd: PredecessorData,
    sigma_bar: dict[tuple[int, int], int],
    cfg: VariantConfig,
) -> dict[tuple[int, int], int]:
    """Presence counts sigma(v, t) from exact-arrival counts."""
    if not cfg.is_active:
        return dict(sigma_bar)
    sigma: dict[tuple[int, int], int] = {}
    for v in range(pd.n):
        arrivals = _exact_arrivals(pd, v)
        if not arrivals:
            continue
        run = math.inf
        total = 0
        idx = 0
        for t in range(arrivals[0][0], pd.T + 1):
            while idx < len(arrivals) and arrivals[idx][0] == t:
                length = arrivals[idx][1]
                if length < run:
                    run = length
                    total = sigma_bar[(v, t)]
                elif length == run:
                    total += sigma_bar[(v, t)]
                idx += 1
            sigma[(v, t)] = total
    return sigma


def pair_counts_and_base(
    pd: PredecessorData,
    sigma: dict[tuple[int, int], int],
    sigma_bar: dict[tuple[int, int], int],
    cfg: VariantConfig,
) -> tuple[dict[int, int], dict[tuple[int, int], float], dict[int, object]]:
    """Pair-level counts, endpoint shares, and overall costs.

    c_overall[v] is the best cost of any s-v walk: an int length for
    shortest/restless, an (arrival, length) tuple for foremost, math.inf
    when unreachable.  The source itself is skipped (no pair to itself).
    """
    s = pd.source
    sigma_pair: dict[int, int] = {s: 0}
    c_overall: dict[int, object] = {}
    delta_base: dict[tuple[int, int], float] = {}
    foremost = cfg.cost == "foremost"

    for v in range(pd.n):
        if v == s:
            continue
        arrivals = _exact_arrivals(pd, v)
        if not arrivals:
            sigma_pair[v] = 0
            c_overall[v] = math.inf
            continue
        if foremost:
            t_best, len_best = min(arrivals)
            c_overall[v] = (t_best, len_best)
            pair = sigma_bar[(v, t_best)]
            sigma_pair[v] = pair
            delta_base[(v, t_best)] = sigma_bar[(v, t_best)] / pair
            continue
        best = min(length for _, length in arrivals)
        c_overall[v] = best
        pair = sum(sigma_bar[(v, t)] for t, length in arrivals if length == best)
        sigma_pair[v] = pair
        if cfg.is_active:
            t_first = min(t for t, length in arrivals if length == best)
            for t in range(t_first, pd.T + 1):
                delta_base[(v, t)] = sigma[(v, t)] / pair
        else:
            for t, length in arrivals:
                if length == best:
                    delta_base[(v, t)] = sigma_bar[(v, t)] / pair
    return sigma_pair, delta_base, c_overall


def compute_walk_counts(pd: PredecessorData, cfg: VariantConfig) -> WalkCounts:
    """Assemble every counting table for one source."""
    raw = count_exact(pd)
    if cfg.is_active:
        sigma_bar = dict(raw)
        for v in range(pd.n):
            run = math.inf
            for t, length in _exact_arrivals(pd, v):
                if length < run:
                    run = length
                elif length > run:
                    sigma_bar[(v, t)] = 0
    else:
        sigma_bar = raw
    sigma = count_total(pd, sigma_bar, cfg)
    sigma_pair, delta_base, c_overall = pair_counts_and_base(pd, sigma, sigma_bar, cfg)
    return WalkCounts(
        source=pd.source,
        sigma_bar=sigma_bar,
        sigma=sigma,
        sigma_pair=sigma_pair,
        delta_base=delta_base,
        c_overall=c_overall,
    )
