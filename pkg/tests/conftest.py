import itertools
import random

import pytest

from temporal_betweenness import TemporalGraph, VariantConfig

# Worked fixture graph: five nodes a..e, e isolated, explicit horizon 7.
FIG1_ARCS = [(0, 1, 1), (1, 2, 2), (3, 2, 3), (1, 2, 5), (2, 1, 5), (2, 3, 6)]
FIG1_LABELS = ["a", "b", "c", "d", "e"]


@pytest.fixture
def fig1() -> TemporalGraph:
    return TemporalGraph(FIG1_LABELS, FIG1_ARCS, T=7)


def all_configs(ks=(1, 2)) -> list[VariantConfig]:
    """Every cost/walk-type/strictness combination the pipeline supports."""
    out = []
    for strict in (False, True):
        for wt in ("passive", "active"):
            out.append(VariantConfig("shortest", wt, strict))
            for k in ks:
                out.append(VariantConfig("restless", wt, strict, k))
        out.append(VariantConfig("foremost", "passive", strict))
    return out


def random_graph(rng: random.Random, n_max=6, t_max=6, p_max=0.5, t_extra=0) -> TemporalGraph | None:
    """Random digraph on <= n_max nodes with arc times in 1..T; None if arc-less."""
    n = rng.randint(2, n_max)
    T = rng.randint(1, t_max)
    p = rng.uniform(0.05, p_max)
    arcs = [
        (u, v, t)
        for u, v in itertools.permutations(range(n), 2)
        for t in range(1, T + 1)
        if rng.random() < p
    ]
    if not arcs:
        return None
    horizon = max(t for _, _, t in arcs) + (rng.randint(0, t_extra) if t_extra else 0)
    return TemporalGraph([f"n{i}" for i in range(n)], arcs, T=horizon)
