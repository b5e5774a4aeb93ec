import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from temporal_betweenness import (
    ConfigError,
    GraphFormatError,
    TemporalGraph,
    VariantConfig,
    aggregate_static,
    compress_times,
    parse_edge_list,
    prefix_graph,
    serialize_edge_list,
)

from conftest import FIG1_ARCS, FIG1_LABELS


def test_parse_basic_and_interning_order():
    g = parse_edge_list("b a 3\na c 1\n# comment\n\nb c 3\n")
    assert g.labels == ("b", "a", "c")
    assert g.T == 3
    assert g.m == 3
    assert (0, 1, 3) in g.arcs  # b -> a


def test_parse_skips_comments_and_blanks():
    g = parse_edge_list("# header\n\n  \nx y 1\n")
    assert g.m == 1


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("a b\n", "line 1"),
        ("a b 1 9\n", "line 1"),
        ("a b one\n", "line 1"),
        ("a b -2\n", "line 1"),
        ("a b 1\nc c 1\n", "line 2"),
        ("a b 1\nc d 1.5\n", "line 2"),
    ],
)
def test_parse_errors_carry_line_numbers(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_edge_list(text)


def test_parse_rejects_arcless_input():
    with pytest.raises(GraphFormatError, match="no arcs"):
        parse_edge_list("# nothing here\n")


def test_undirected_doubles_arcs():
    g = parse_edge_list("a b 1\n", directed=False)
    assert g.m == 2
    assert set(g.arcs) == {(0, 1, 1), (1, 0, 1)}


def test_duplicate_arcs_collapse():
    g = parse_edge_list("a b 1\na b 1\na b 2\n")
    assert g.m == 2


def test_explicit_horizon_validation():
    g = TemporalGraph(["a", "b"], [(0, 1, 2)], T=5)
    assert g.T == 5
    with pytest.raises(GraphFormatError):
        TemporalGraph(["a", "b"], [(0, 1, 2)], T=1)


def test_self_loop_rejected_in_constructor():
    with pytest.raises(GraphFormatError):
        TemporalGraph(["a"], [(0, 0, 1)])


def test_out_arcs_sorted_and_in_times_distinct(fig1):
    for row in fig1.out_arcs:
        assert list(row) == sorted(row)
    assert fig1.in_times[2] == (2, 3, 5)
    assert fig1.distinct_times == (1, 2, 3, 5, 6)


def test_serialize_round_trip(fig1):
    text = serialize_edge_list(fig1)
    back = parse_edge_list(text)
    # e is isolated and cannot survive an edge-list round trip
    assert back.labels == tuple(l for l in fig1.labels if l != "e")
    assert {(fig1.labels[u], fig1.labels[v], t) for u, v, t in fig1.arcs} == {
        (back.labels[u], back.labels[v], t) for u, v, t in back.arcs
    }


def test_prefix_graph_thresholds(fig1):
    # T = 7: mu = 0.5 keeps arcs at times <= 3
    sub = prefix_graph(fig1, 0.5)
    assert sub.T == 3
    assert all(t <= 3 for _, _, t in sub.arcs)
    assert sub.labels == fig1.labels
    assert prefix_graph(fig1, 1.0).arcs == fig1.arcs
    assert prefix_graph(fig1, 0.0).m == 0
    with pytest.raises(ConfigError):
        prefix_graph(fig1, 1.5)
    with pytest.raises(ConfigError):
        prefix_graph(fig1, -0.1)


def test_prefix_graph_float_boundary():
    g = TemporalGraph(["a", "b"], [(0, 1, 3)], T=10)
    # 0.3 * 10 is 2.9999... in floats; the threshold must still be 3
    assert prefix_graph(g, 0.3).m == 1


def test_compress_times():
    g = TemporalGraph(["a", "b", "c"], [(0, 1, 4), (1, 2, 9), (0, 2, 4)])
    c = compress_times(g)
    assert c.T == 2
    assert set(c.arcs) == {(0, 1, 1), (1, 2, 2), (0, 2, 1)}


def test_aggregate_static(fig1):
    s = aggregate_static(fig1)
    assert s.labels == fig1.labels
    assert s.edges == frozenset({(0, 1), (1, 2), (3, 2), (2, 1), (2, 3)})


class TestVariantConfig:
    def test_restless_requires_k(self):
        with pytest.raises(ConfigError):
            VariantConfig("restless", "passive")

    @pytest.mark.parametrize("bad_k", [0, -1, 2.5, "3"])
    def test_k_must_be_positive_int(self, bad_k):
        with pytest.raises(ConfigError):
            VariantConfig("restless", "passive", k=bad_k)

    def test_unbounded_restless_is_shortest(self):
        cfg = VariantConfig("restless", "active", k=math.inf)
        assert cfg.cost == "shortest" and cfg.k is None

    def test_k_rejected_outside_restless(self):
        with pytest.raises(ConfigError):
            VariantConfig("shortest", "passive", k=3)

    def test_active_foremost_rejected(self):
        with pytest.raises(ConfigError):
            VariantConfig("foremost", "active")

    def test_effective_k(self):
        assert VariantConfig("restless", "passive", k=2).effective_k(9) == 2
        assert VariantConfig("shortest", "passive").effective_k(9) == 9


@given(
    st.lists(
        st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 6)).filter(
            lambda a: a[0] != a[1]
        ),
        min_size=1,
        max_size=25,
    )
)
@settings(max_examples=150, deadline=None)
def test_serialize_parse_round_trip_random(arc_list):
    labels = [f"v{i}" for i in range(5)]
    g = TemporalGraph(labels, arc_list)
    back = parse_edge_list(serialize_edge_list(g))
    assert {(g.labels[u], g.labels[v], t) for u, v, t in g.arcs} == {
        (back.labels[u], back.labels[v], t) for u, v, t in back.arcs
    }
    assert back.T == g.T


def test_fingerprint_distinguishes_content(fig1):
    other = TemporalGraph(FIG1_LABELS, FIG1_ARCS, T=6)
    assert fig1.fingerprint() != other.fingerprint()
    assert fig1.fingerprint() == TemporalGraph(FIG1_LABELS, FIG1_ARCS, T=7).fingerprint()
