import math
import random

import pytest

from temporal_betweenness import TemporalGraph, VariantConfig, successors, temporal_bfs
from temporal_betweenness.shortest_walks import NIL

from conftest import all_configs, random_graph

PASSIVE = VariantConfig("shortest", "passive")
ACTIVE = VariantConfig("shortest", "active")


def test_fig1_distance_row_for_b(fig1):
    pd = temporal_bfs(fig1, 0, PASSIVE)
    assert [pd.cost(1, t) for t in range(7)] == [math.inf, 1, math.inf, math.inf, math.inf, 3, math.inf]


def test_fig1_overall_costs_from_a(fig1):
    pd = temporal_bfs(fig1, 0, PASSIVE)
    best = {v: min((pd.cost(v, t) for t in pd.vertex_times(v)), default=math.inf) for v in range(5)}
    assert best[1] == 1 and best[2] == 2 and best[3] == 3 and best[4] == math.inf
    assert all(pd.cost(0, t) == 0 for t in pd.init_times)


def test_fig1_active_semantic_costs(fig1):
    """With unbounded waiting, b's running-min cost is 1 from t = 1 on."""
    pd = temporal_bfs(fig1, 0, ACTIVE)
    run = math.inf
    semantic = []
    for t in range(fig1.T + 1):
        run = min(run, pd.cost(1, t))
        semantic.append(run)
    assert semantic == [math.inf] + [1] * fig1.T


def test_fig1_stamp_suppresses_longer_arrival(fig1):
    pd = temporal_bfs(fig1, 0, ACTIVE)
    # (b,5) is reachable in 3 transitions but already covered since t=1
    assert pd.cost(1, 5) == 1
    assert not pd.is_vertex(1, 5)
    assert (1, 5) not in pd.enqueue_order
    # passive search keeps the exact arrival
    pp = temporal_bfs(fig1, 0, PASSIVE)
    assert pp.cost(1, 5) == 3
    assert pp.is_vertex(1, 5)


def test_stamp_flip_same_level_registers_once():
    g = TemporalGraph(["s", "b"], [(0, 1, 2), (0, 1, 3)], T=5)
    pd = temporal_bfs(g, 0, ACTIVE)
    assert pd.is_vertex(1, 2) and pd.is_vertex(1, 3)
    assert pd.cost(1, 2) == 1 and pd.cost(1, 3) == 1
    assert pd.preds(1, 3) == frozenset({(0, 3)})
    assert pd.enqueue_counts[(1, 3)] == 1


def test_source_reentry_is_registered_but_never_relays():
    g = TemporalGraph(["a", "b", "c", "e"], [(0, 1, 1), (1, 2, 1), (2, 0, 2), (0, 3, 3)], T=3)
    pd = temporal_bfs(g, 0, PASSIVE)
    assert pd.is_vertex(0, 2)
    assert pd.preds(0, 2) == frozenset({(2, 1)})
    succ = successors(pd)
    assert succ[(0, 2)] == frozenset()
    # e is reached from the initialization at t=3, not through the re-entry
    assert pd.preds(3, 3) == frozenset({(0, 3)})


def test_init_states_keep_nil_predecessor(fig1):
    pd = temporal_bfs(fig1, 2, PASSIVE)
    for t in pd.init_times:
        assert pd.preds(2, t) == frozenset({NIL})
        assert pd.cost(2, t) == 0


def test_strictness_blocks_same_time_step():
    g = TemporalGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)], T=1)
    assert temporal_bfs(g, 0, PASSIVE).is_vertex(2, 1)
    assert not temporal_bfs(g, 0, VariantConfig("shortest", "passive", strict=True)).is_vertex(2, 1)


def test_restless_window_blocks_long_wait():
    g = TemporalGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 5)], T=5)
    assert temporal_bfs(g, 0, PASSIVE).is_vertex(2, 5)
    assert not temporal_bfs(g, 0, VariantConfig("restless", "passive", k=2)).is_vertex(2, 5)
    assert temporal_bfs(g, 0, VariantConfig("restless", "passive", k=4)).is_vertex(2, 5)


def test_bounded_waiting_active_search_keeps_detour_arrival():
    # the only s->z route departs v at 3; the t=1 arrival cannot wait that
    # long under k=1, so the longer t=2 re-arrival must stay visible
    g = TemporalGraph(["s", "v", "x", "z"], [(0, 1, 1), (0, 2, 1), (2, 1, 2), (1, 3, 3)])
    cfg = VariantConfig("restless", "active", k=1)
    pd = temporal_bfs(g, 0, cfg)
    assert pd.is_vertex(1, 2) and pd.cost(1, 2) == 2
    assert pd.is_vertex(3, 3)


def _edge_set(pd):
    edges = set()
    for v, row in pd.pre.items():
        for t, preds in row.items():
            for p in preds:
                if p != NIL:
                    edges.add((p, (v, t)))
    return edges


def test_invariants_on_random_graphs():
    rng = random.Random(20240817)
    cfgs = all_configs()
    for _ in range(60):
        g = random_graph(rng, t_extra=2)
        if g is None:
            continue
        for cfg in cfgs:
            for s in range(g.n):
                pd = temporal_bfs(g, s, cfg)
                # every temporal node enqueued at most once
                assert all(c == 1 for c in pd.enqueue_counts.values())
                # predecessor edges climb exactly one level: acyclic by construction
                for (u, r), (v, t) in _edge_set(pd):
                    assert pd.cost(v, t) == pd.cost(u, r) + 1
                    if u != s or pd.cost(u, r) > 0:
                        gap = t - r
                        assert (gap > 0 if cfg.strict else gap >= 0)
                        assert gap <= cfg.effective_k(g.T)
                # operation count stays within the per-source budget
                assert pd.relax_ops <= g.m * (g.T + 1)


def test_active_predecessors_subset_of_passive():
    rng = random.Random(7151)
    for _ in range(120):
        g = random_graph(rng)
        if g is None:
            continue
        strict = rng.random() < 0.5
        k = rng.choice([None, 1, 2])
        cost = "shortest" if k is None else "restless"
        active = VariantConfig(cost, "active", strict, k)
        passive = VariantConfig(cost, "passive", strict, k)
        s = rng.randrange(g.n)
        ea = _edge_set(temporal_bfs(g, s, active))
        ep = _edge_set(temporal_bfs(g, s, passive))
        assert ea <= ep
        if k is not None and k < g.T:
            # a binding waiting bound disables stamping: the active search
            # explores exactly the passive graph
            assert ea == ep


def test_foremost_search_equals_passive_shortest_search():
    rng = random.Random(99)
    for _ in range(40):
        g = random_graph(rng)
        if g is None:
            continue
        for strict in (False, True):
            s = rng.randrange(g.n)
            a = temporal_bfs(g, s, VariantConfig("foremost", "passive", strict))
            b = temporal_bfs(g, s, VariantConfig("shortest", "passive", strict))
            assert a.pre == b.pre and a.dist == b.dist


def test_successors_inverts_predecessors(fig1):
    pd = temporal_bfs(fig1, 0, PASSIVE)
    succ = successors(pd)
    for (u, r), targets in succ.items():
        assert pd.is_vertex(u, r)
        for v, t in targets:
            assert (u, r) in pd.preds(v, t)
    for v, row in pd.pre.items():
        for t, preds in row.items():
            for p in preds:
                if p != NIL:
                    assert (v, t) in succ[p]


def test_bad_source_rejected(fig1):
    from temporal_betweenness import ConfigError

    with pytest.raises(ConfigError):
        temporal_bfs(fig1, 9, PASSIVE)
