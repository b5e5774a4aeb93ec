import random

import pytest

from temporal_betweenness import (
    InvariantError,
    TemporalGraph,
    VariantConfig,
    accumulate,
    before_time,
    compute_walk_counts,
    temporal_bfs,
)
from temporal_betweenness.exhaustive_oracle import oracle_walk_tables
from temporal_betweenness.shortest_walks import PredecessorData

from conftest import all_configs, random_graph

PASSIVE = VariantConfig("shortest", "passive")
ACTIVE = VariantConfig("shortest", "active")


def _table(g, s, cfg, observer=None):
    pd = temporal_bfs(g, s, cfg)
    counts = compute_walk_counts(pd, cfg)
    return pd, counts, accumulate(g, pd, counts, cfg, observer=observer)


def test_fig1_cumulative_shares(fig1):
    _, _, passive = _table(fig1, 0, PASSIVE)
    assert passive.value(1, 1) == pytest.approx(3.0)
    _, _, active = _table(fig1, 0, ACTIVE)
    assert active.value(1, 3) == pytest.approx(2.0)


def test_strict_active_branch_counts():
    g = TemporalGraph(["s", "v", "w"], [(0, 1, 1), (0, 1, 2), (1, 2, 2)])
    cfg = VariantConfig("shortest", "active", strict=True)
    _, counts, table = _table(g, 0, cfg)
    assert counts.delta_base[(1, 2)] == pytest.approx(1.0)
    assert table.value(1, 2) == pytest.approx(2.0)
    assert table.value(1, 1) == pytest.approx(1.5)


def test_same_time_cycle_not_double_counted():
    # the unique optimal s->z walk leaves v at 2 and returns to v at 2;
    # presence at (v,2) is a set notion, so that walk contributes once.
    # cum(v,2) = one share per destination v, x, z -- not 4.
    g = TemporalGraph(["s", "v", "x", "z"], [(0, 1, 1), (1, 2, 2), (2, 1, 2), (1, 3, 3)])
    cfg = VariantConfig("restless", "active", k=1)
    _, counts, table = _table(g, 0, cfg)
    assert table.value(1, 2) == pytest.approx(3.0)
    assert counts.delta_base[(1, 2)] == pytest.approx(1.0)


def test_before_time(fig1):
    pd = temporal_bfs(fig1, 0, PASSIVE)
    assert before_time(pd, 1, 0) is None
    assert before_time(pd, 1, 1) == 1
    assert before_time(pd, 1, 4) == 1
    assert before_time(pd, 1, 5) == 5
    assert before_time(pd, 1, 7) == 5
    assert before_time(pd, 4, 7) is None


def test_observer_sees_every_edge_in_decreasing_time_order(fig1):
    calls = []
    _table(fig1, 0, PASSIVE, observer=lambda a, b: calls.append((a, b)))
    from_b1 = [b for a, b in calls if a == (1, 1)]
    assert from_b1 == [(2, 5), (2, 2)]
    per_vertex = {}
    for a, b in calls:
        per_vertex.setdefault(a, []).append(b)
    for succ in per_vertex.values():
        assert succ == sorted(succ, key=lambda st: (-st[1], st[0]))


def test_visit_counts_are_single_visits():
    rng = random.Random(606)
    for _ in range(25):
        g = random_graph(rng)
        if g is None:
            continue
        for cfg in all_configs((1,)):
            s = rng.randrange(g.n)
            pd, _, table = _table(g, s, cfg)
            assert set(table.visit_counts) == set(pd.enqueue_order)
            assert all(c == 1 for c in table.visit_counts.values())


def test_cum_dominates_delta_base():
    rng = random.Random(607)
    for _ in range(25):
        g = random_graph(rng, t_extra=1)
        if g is None:
            continue
        for cfg in all_configs((2,)):
            s = rng.randrange(g.n)
            _, counts, table = _table(g, s, cfg)
            for key, base in counts.delta_base.items():
                assert table.value(*key) >= base - 1e-12


def test_cum_matches_oracle_tables():
    rng = random.Random(8128)
    checked = 0
    for _ in range(50):
        g = random_graph(rng)
        if g is None:
            continue
        s = rng.randrange(g.n)
        for cfg in all_configs():
            _, _, table = _table(g, s, cfg)
            oracle = oracle_walk_tables(g, s, cfg)["cum"]
            keys = {k for k in table.cum if k[0] != s} | {k for k in oracle if k[0] != s}
            for key in keys:
                assert table.value(*key) == pytest.approx(float(oracle.get(key, 0)), abs=1e-12), (
                    cfg.describe(),
                    key,
                )
            checked += 1
    assert checked > 250


def test_successor_without_walks_raises():
    g = TemporalGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])
    healthy = temporal_bfs(g, 0, PASSIVE)
    counts = compute_walk_counts(healthy, PASSIVE)
    corrupted = PredecessorData(
        source=0,
        n=3,
        T=1,
        config=PASSIVE,
        dist=healthy.dist,
        pre=healthy.pre,
        init_times=healthy.init_times,
        enqueue_order=((0, 1), (1, 1)),  # (2,1) dropped: its walks go uncounted
        enqueue_counts={(0, 1): 1, (1, 1): 1},
        relax_ops=healthy.relax_ops,
    )
    with pytest.raises(InvariantError, match="no walks"):
        accumulate(g, corrupted, counts, PASSIVE)
