"""Backward dependency accumulation over one source's predecessor graph.

For each temporal node alpha the table D(alpha) holds the summed dependency
share of all optimal walks continuing from alpha: the endpoint share
1/sigma_pair(v) when alpha itself realizes v's overall optimum, plus the
shares of every extension through a successor.  Because predecessor-graph
edges always go from one BFS level to the next, a reverse sweep of the
enqueue order computes D in one pass with every node processed exactly
once.

cum(v, t) then aggregates, over all targets z, the share of optimal s-z
walks that put v at (v, t):

* passive visiting: a walk puts v only at its exact arrival points, so
  cum(alpha) = sigma_bar(alpha) * D(alpha) at predecessor-graph vertices
  and 0 elsewhere.
* active visiting: a walk arriving at alpha = (v, r) and departing to a
  successor (w, d) occupies v throughout [r, d], and a walk ending its
  transitions at alpha occupies v throughout [r, T] (terminal waiting is
  unconditional).  Each arrival therefore spreads interval masses over a
  difference array; the terminal bands reproduce delta_base exactly, so
  that table is reused verbatim.

Active non-strict walks can close a same-time cycle and be present at a
single (v, t) through two overlapping intervals: the earlier visit departs
at t and the walk returns to v at t through arcs all timed t.  Interval
spreading then counts that walk twice at the point t, while presence is a
set notion — such walks are re-counted by a backward scan over same-time
predecessor chains and subtracted once.  At most two visit intervals can
share a point (a third would need two distinct arrivals of v at the same
time, which is one temporal node, not two), so a single subtraction is
exact.
"""

from __future__ import annotations

from bisect import bisect_right

from .errors import InvariantError
from .shortest_walks import NIL, PredecessorData, successors
from .walk_counting import WalkCounts, count_exact
from .temporal_graph import TemporalGraph, VariantConfig

__all__ = ["DependencyTable", "accumulate", "before_time"]


def before_time(pd: PredecessorData, v: int, t: int):
    """Latest t' <= t at which v is a predecessor-graph vertex, or None."""
    times = pd.vertex_times(v)
    i = bisect_right(times, t)
    return times[i - 1] if i else None


class DependencyTable:
    """cum plus instrumentation; entries absent from cum are zero."""

    __slots__ = ("source", "cum", "visit_counts")

    def __init__(self, source: int, cum: dict, visit_counts: dict):
        self.source = source
        self.cum = cum
        self.visit_counts = visit_counts

    def value(self, v: int, t: int) -> float:
        return self.cum.get((v, t), 0.0)


def accumulate(
    g: TemporalGraph,
    pd: PredecessorData,
    counts: WalkCounts,
    cfg: VariantConfig,
    observer=None,
) -> DependencyTable:
    """Dependency table for one source.

    observer, if given, is called as observer((v, t), (w, t')) for every
    predecessor-graph edge while D is accumulated; per node the successors
    are visited by decreasing time (ties by ascending node id), which also
    fixes the floating-point summation order.
    """
    s = pd.source
    c_overall = counts.c_overall
    # Relay counts are the raw arrival counts: an arrival dominated for
    # *visiting* purposes still relays walks onward, so the zeroed
    # sigma_bar of active bounded-waiting searches must not be used here.
    relay = count_exact(pd)
    succ = successors(pd)
    foremost = cfg.cost == "foremost"

    def attains(v: int, r: int) -> bool:
        if v == s:
            return False
        if foremost:
            return c_overall[v] == (r, pd.dist[v][r])
        return pd.dist[v][r] == c_overall[v]

    D: dict[tuple[int, int], float] = {}
    visit_counts: dict[tuple[int, int], int] = {}
    for alpha in reversed(pd.enqueue_order):
        visit_counts[alpha] = visit_counts.get(alpha, 0) + 1
        v, r = alpha
        total = 1.0 / counts.sigma_pair[v] if attains(v, r) else 0.0
        for beta in sorted(succ.get(alpha, ()), key=lambda st: (-st[1], st[0])):
            if relay.get(beta, 0) < 1:
                raise InvariantError(f"successor {beta} of {alpha} carries no walks")
            if observer is not None:
                observer(alpha, beta)
            total += D[beta]
        D[alpha] = total

    if not cfg.is_active:
        cum = {alpha: relay[alpha] * D[alpha] for alpha in pd.enqueue_order}
        return DependencyTable(s, cum, visit_counts)

    # Active visiting: spread interval masses per node, then add the
    # terminal bands, which are exactly the delta_base rows.
    T = pd.T
    diffs: dict[int, list[float]] = {}
    for alpha in pd.enqueue_order:
        v, r = alpha
        row = diffs.get(v)
        if row is None:
            row = diffs[v] = [0.0] * (T + 2)
        mass = float(relay[alpha])
        for w, d in sorted(succ.get(alpha, ()), key=lambda st: (-st[1], st[0])):
            wt = mass * D[(w, d)]
            row[r] += wt
            row[d + 1] -= wt
        # overlapping double visit: the walk left v at time r through a
        # same-time chain and is arriving back right now
        if not cfg.strict:
            back = _same_time_chain_mass(pd, relay, alpha)
            if back:
                wt = back * D[alpha]
                row[r] -= wt
                row[r + 1] += wt

    delta_base = counts.delta_base
    cum: dict[tuple[int, int], float] = {}
    for v, row in diffs.items():
        running = 0.0
        for t in range(T + 1):
            running += row[t]
            val = running + delta_base.get((v, t), 0.0)
            if val:
                cum[(v, t)] = val
    for key, val in delta_base.items():
        if key not in cum and val:
            cum[key] = val
    return DependencyTable(s, cum, visit_counts)


def _same_time_chain_mass(pd: PredecessorData, relay: dict, alpha: tuple[int, int]) -> int:
    """Walks arriving at alpha=(v,t) whose previous v-visit still covers t.

    Such a prefix leaves some earlier arrival (v, r) and comes back through
    predecessors all timed t; any step back in time before reaching v again
    means the earlier v-visit ended before t and there is no overlap.
    """
    v, t = alpha

    def back(state) -> int:
        total = 0
        for w, r in pd.preds(*state):
            if (w, r) == NIL:
                continue
            if w == v:
                total += relay[(w, r)]
            elif r == t:
                total += back((w, r))
        return total

    return back(alpha)
