"""Brute-force ground truth by explicit walk enumeration.

Everything here is computed literally from the walk definitions: optimal
walks are materialized one by one as transition sequences, their visited
temporal nodes are listed per the walk-type rules, and betweenness is an
exact rational sum over ordered node pairs.  The only pruning applied is
provably lossless (prefixes of optimal walks are themselves state-optimal,
so enumeration can stay inside the tight state graph).  Deliberately shares
no machinery with the fast pipeline beyond the graph type itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .betweenness_engine import BetweennessResult, finalize_result
from .errors import InvariantError, SizeGuardError
from .temporal_graph import TemporalGraph, VariantConfig

GUARD_N = 8
GUARD_T = 8

INF = float("inf")


@dataclass(frozen=True)
class EnumeratedWalk:
    """One optimal walk: its transitions and the temporal nodes it visits.

    visited follows the walk-type rule: passive walks visit their start
    point and each arrival point; active walks occupy each intermediate node
    from arrival through departure, and (being optimal) occupy their final
    node from arrival through the horizon T.  The list may repeat a temporal
    node when a same-time cycle passes through it twice; membership queries
    should use set(visited).
    """

    transitions: tuple[tuple[int, int, int], ...]
    visited: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.transitions)

    @property
    def arrival(self) -> int:
        return self.transitions[-1][2]


def _check_guard(g: TemporalGraph, size_guard: bool) -> None:
    if size_guard and (g.n > GUARD_N or g.T > GUARD_T):
        raise SizeGuardError(
            f"exhaustive enumeration refused for n={g.n}, T={g.T} "
            f"(guard: n<={GUARD_N}, T<={GUARD_T}); pass size_guard=False to override"
        )


def _step_ok(r: int, t1: int, strict: bool, k: int | None) -> bool:
    """May a walk whose last transition was at r make its next one at t1?"""
    if strict:
        if t1 <= r:
            return False
    elif t1 < r:
        return False
    return k is None or t1 - r <= k


class _StateSpace:
    """Exact-arrival state table for one (graph, source, config).

    A state (v, r) stands for "a walk is at v and its last transition
    happened at time r"; ED[v][r] is the minimum length over walks arriving
    exactly there, with ED[s][r] = 0 at the source's out-arc times (the
    empty walk observed at its departure moment).  Walks correspond
    one-to-one to paths in the tight graph (edges that advance ED by one),
    because every prefix of a minimum-length exact-arrival walk is itself
    state-optimal: a shorter prefix to the same state could be swapped in
    without disturbing the suffix's waiting constraints.
    """

    def __init__(self, g: TemporalGraph, s: int, cfg: VariantConfig):
        self.g = g
        self.s = s
        self.cfg = cfg
        k = cfg.k if cfg.cost == "restless" else None
        n, T = g.n, g.T
        ED = [[INF] * (T + 1) for _ in range(n)]
        for t, _ in g.out_arcs[s]:
            ED[s][t] = 0

        # Fixpoint over the state relaxation; non-strict same-time cycles
        # force iteration, but values only decrease and are bounded by n(T+1).
        changed = True
        sweeps = 0
        while changed:
            changed = False
            sweeps += 1
            if sweeps > n * (T + 1) + 2:
                raise InvariantError("exact-arrival cost relaxation failed to converge")
            for u, w, t1 in g.arcs:
                best = ED[w][t1]
                row = ED[u]
                for r in range(T + 1):
                    d = row[r]
                    if d == INF:
                        continue
                    if d == 0:
                        if r != t1:  # the empty walk departs at its own time
                            continue
                    elif not _step_ok(r, t1, cfg.strict, k):
                        continue
                    if d + 1 < best:
                        best = d + 1
                if best < ED[w][t1]:
                    ED[w][t1] = best
                    changed = True
        self.ED = ED

        # Exact counts and tight edges, in ED order (preds are one level up).
        states = sorted(
            ((v, r) for v in range(n) for r in range(T + 1) if ED[v][r] < INF),
            key=lambda vr: ED[vr[0]][vr[1]],
        )
        sigma_exact: dict[tuple[int, int], int] = {}
        tight_into: dict[tuple[int, int], list[tuple[int, int]]] = {st: [] for st in states}
        in_arcs: dict[tuple[int, int], list[int]] = {}
        for u, w, t1 in g.arcs:
            in_arcs.setdefault((w, t1), []).append(u)
        for w, t1 in states:
            lvl = ED[w][t1]
            if lvl == 0:
                sigma_exact[(w, t1)] = 1
                continue
            total = 0
            for u in sorted(in_arcs.get((w, t1), ())):
                for r in range(T + 1):
                    d = ED[u][r]
                    if d + 1 != lvl:
                        continue
                    if d == 0:
                        if r != t1:
                            continue
                    elif not _step_ok(r, t1, cfg.strict, k):
                        continue
                    total += sigma_exact[(u, r)]
                    tight_into[(w, t1)].append((u, r))
            if total == 0:
                raise InvariantError(f"reachable state {(w, t1)} has no tight predecessor")
            sigma_exact[(w, t1)] = total
        self.states = states
        self.sigma_exact = sigma_exact
        self.tight_into = tight_into

    def target_states(self, z: int) -> list[tuple[int, int]]:
        """States whose walks realize c_s(z) under the configured criterion."""
        finite = [(r, self.ED[z][r]) for r in range(self.g.T + 1) if 0 < self.ED[z][r] < INF]
        if not finite:
            return []
        if self.cfg.cost == "foremost":
            # lexicographic (arrival, length): earliest arrival, then fewest
            # transitions -- and ED[z][r] is already minimal per arrival
            r_star = min(r for r, _ in finite)
            return [(z, r_star)]
        best = min(d for _, d in finite)
        return [(z, r) for r, d in finite if d == best]

    def enumerate_to(self, targets: list[tuple[int, int]]) -> list[tuple[tuple[int, int, int], ...]]:
        """All transition sequences whose tight state path ends in targets."""
        if not targets:
            return []
        target_set = set(targets)
        # Mark states that can still reach a target through tight edges, so
        # the DFS below never explores a dead branch.
        reach: set[tuple[int, int]] = set(targets)
        tight_out: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for st, preds in self.tight_into.items():
            for p in preds:
                tight_out.setdefault(p, []).append(st)
        order = sorted(self.states, key=lambda vr: -self.ED[vr[0]][vr[1]])
        for st in order:
            if st in reach:
                continue
            if any(nxt in reach for nxt in tight_out.get(st, ())):
                reach.add(st)

        walks: list[tuple[tuple[int, int, int], ...]] = []
        path: list[tuple[int, int]] = []

        def dfs(st: tuple[int, int]) -> None:
            path.append(st)
            if st in target_set:
                # A tight path [(s,t0),(w1,t1),...] spells its transitions.
                walks.append(
                    tuple((path[i][0], path[i + 1][0], path[i + 1][1]) for i in range(len(path) - 1))
                )
            else:
                for nxt in sorted(tight_out.get(st, ())):
                    if nxt in reach:
                        dfs(nxt)
            path.pop()

        for st in sorted(self.states):
            if self.ED[st[0]][st[1]] == 0 and st in reach:
                dfs(st)
        return walks


def _visited(transitions: tuple[tuple[int, int, int], ...], cfg: VariantConfig, T: int) -> tuple[tuple[int, int], ...]:
    """Visited temporal nodes of a walk, per the walk-type rule."""
    t_first = transitions[0][2]
    out: list[tuple[int, int]] = [(transitions[0][0], t_first)]
    if cfg.walk_type == "passive":
        out.extend((w, t) for _, w, t in transitions)
        return tuple(out)
    for i, (_, w, t) in enumerate(transitions):
        t_end = transitions[i + 1][2] if i + 1 < len(transitions) else T
        out.extend((w, tt) for tt in range(t, t_end + 1))
    return tuple(out)


def enumerate_optimal_walks(
    g: TemporalGraph, s: int, z: int, cfg: VariantConfig, size_guard: bool = True
) -> tuple[EnumeratedWalk, ...]:
    """The set of optimal s-z walks under cfg, in deterministic order.

    Active walks are returned already extended to the horizon (an optimal
    walk occupies its final node from arrival through T).  s == z yields the
    empty tuple: betweenness sums over ordered pairs of distinct nodes.
    """
    _check_guard(g, size_guard)
    if s == z:
        return ()
    space = _StateSpace(g, s, cfg)
    seqs = space.enumerate_to(space.target_states(z))
    walks = tuple(
        EnumeratedWalk(tr, _visited(tr, cfg, g.T)) for tr in sorted(seqs)
    )
    expected = sum(space.sigma_exact[st] for st in space.target_states(z))
    if len(walks) != expected:
        raise InvariantError(
            f"enumeration found {len(walks)} optimal {s}-{z} walks, state counts say {expected}"
        )
    return walks


def oracle_betweenness(g: TemporalGraph, cfg: VariantConfig, size_guard: bool = True) -> BetweennessResult:
    """Temporal betweenness computed literally from the definition.

    For every ordered pair s != z, every optimal walk contributes
    1/sigma_sz at each visited temporal node (v,t) with v not in {s,z};
    accumulation is exact-rational, converted to floats only at the end.
    """
    _check_guard(g, size_guard)
    acc: dict[tuple[int, int], Fraction] = {}
    for s in range(g.n):
        space = _StateSpace(g, s, cfg)
        for z in range(g.n):
            if z == s:
                continue
            seqs = space.enumerate_to(space.target_states(z))
            if not seqs:
                continue
            share = Fraction(1, len(seqs))
            for tr in seqs:
                for vt in set(_visited(tr, cfg, g.T)):
                    if vt[0] != s and vt[0] != z:
                        acc[vt] = acc.get(vt, Fraction(0)) + share
    b_vt = np.zeros((g.n, g.T + 1))
    for (v, t), val in acc.items():
        b_vt[v, t] = float(val)
    return finalize_result(g, cfg, b_vt, extra_provenance={"method": "exhaustive"})


def oracle_walk_tables(g: TemporalGraph, s: int, cfg: VariantConfig, size_guard: bool = True) -> dict:
    """Per-source counting tables straight from the definitions (exact).

    Returns sigma_bar / sigma keyed (v,t), sigma_pair keyed v, and
    delta_base / cum keyed (v,t) as Fractions.  sigma_bar counts exact
    optimal arrivals for the *temporal-node* cost of the walk type: under
    active visiting, an arrival strictly longer than an earlier one at the
    same node can never realize the node's cost at that time, so it counts
    zero there.
    """
    _check_guard(g, size_guard)
    space = _StateSpace(g, s, cfg)
    T = g.T
    sigma_bar: dict[tuple[int, int], int] = {}
    sigma: dict[tuple[int, int], int] = {}

    for v in range(g.n):
        row = space.ED[v]
        if cfg.walk_type == "active":
            run = INF
            total = 0
            for t in range(T + 1):
                if row[t] < run:
                    # strictly better arrival: earlier, longer ones stop
                    # being optimal and the pool restarts here
                    run = row[t]
                    total = space.sigma_exact.get((v, t), 0)
                elif row[t] == run and run < INF:
                    total += space.sigma_exact.get((v, t), 0)
                sigma_bar[(v, t)] = space.sigma_exact.get((v, t), 0) if row[t] == run else 0
                sigma[(v, t)] = total
        else:
            for t in range(T + 1):
                sb = space.sigma_exact.get((v, t), 0)
                sigma_bar[(v, t)] = sb
                sigma[(v, t)] = sb

    sigma_pair: dict[int, int] = {}
    delta_base: dict[tuple[int, int], Fraction] = {}
    cum: dict[tuple[int, int], Fraction] = {}
    for z in range(g.n):
        if z == s:
            sigma_pair[z] = 0
            continue
        seqs = space.enumerate_to(space.target_states(z))
        sigma_pair[z] = len(seqs)
        if not seqs:
            continue
        share = Fraction(1, len(seqs))
        for tr in seqs:
            for vt in set(_visited(tr, cfg, g.T)):
                cum[vt] = cum.get(vt, Fraction(0)) + share
                if vt[0] == z:
                    delta_base[vt] = delta_base.get(vt, Fraction(0)) + share
    return {
        "sigma_bar": sigma_bar,
        "sigma": sigma,
        "sigma_pair": sigma_pair,
        "delta_base": delta_base,
        "cum": cum,
    }
