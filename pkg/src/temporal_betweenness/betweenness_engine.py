"""Betweenness results and the per-source computation pipeline.

This module holds the shared result container plus the orchestration that
loops over sources, runs the per-source walk search / counting /
accumulation, applies the endpoint correction, and reduces per-source
contributions into B(v,t) with marginals B(v) and B(t).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dependency_accumulation import accumulate
from .errors import ConfigError, InvariantError
from .shortest_walks import temporal_bfs
from .temporal_graph import TemporalGraph, VariantConfig
from .walk_counting import compute_walk_counts

# Negative values this small are accumulation noise and clamp to zero;
# anything more negative indicates a bug.
NEGATIVE_TOL = 1e-12


@dataclass(frozen=True)
class BetweennessResult:
    """Dense per-temporal-node betweenness plus its two marginals.

    b_vt is node-major over times 0..T and may be None in marginals-only
    mode; b_v and b_t are always present.
    """

    labels: tuple[str, ...]
    T: int
    config: VariantConfig
    b_v: np.ndarray
    b_t: np.ndarray
    b_vt: np.ndarray | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.labels)

    def value(self, label: str, t: int) -> float:
        if self.b_vt is None:
            raise ValueError("full table was not retained (marginals-only result)")
        return float(self.b_vt[self.labels.index(label), t])


def finalize_result(
    g: TemporalGraph,
    cfg: VariantConfig,
    b_vt: np.ndarray,
    keep_table: bool = True,
    extra_provenance: dict | None = None,
) -> BetweennessResult:
    """Clamp accumulation noise, compute marginals, attach provenance."""
    if b_vt.min() < -NEGATIVE_TOL:
        raise InvariantError(f"negative betweenness {b_vt.min()} beyond tolerance")
    b_vt = np.maximum(b_vt, 0.0)
    prov = {
        "n": g.n,
        "m": g.m,
        "T": g.T,
        "graph": g.fingerprint(),
        "config": cfg.describe(),
    }
    if extra_provenance:
        prov.update(extra_provenance)
    return BetweennessResult(
        labels=g.labels,
        T=g.T,
        config=cfg,
        b_v=b_vt.sum(axis=1),
        b_t=b_vt.sum(axis=0),
        b_vt=b_vt if keep_table else None,
        provenance=prov,
    )


def source_contribution(g: TemporalGraph, cfg: VariantConfig, s: int) -> list[tuple[int, int, float]]:
    """One source's additions to B: (v, t, value) with the source row dropped.

    Per source the update is cum_s(v,t) − delta_base_s(v,t); at v = s the
    same amount is subtracted back (walks starting or ending at v never
    count toward v's own centrality), so the source row is skipped outright.
    """
    pd = temporal_bfs(g, s, cfg)
    counts = compute_walk_counts(pd, cfg)
    table = accumulate(g, pd, counts, cfg)
    items = []
    for key in sorted(table.cum):
        v, t = key
        if v == s:
            continue
        c = table.cum[key] - counts.delta_base.get(key, 0.0)
        if c:
            items.append((v, t, c))
    return items


def _kernel_engine_supports(cfg: VariantConfig) -> bool:
    # Same-time overlap corrections of bounded-waiting non-strict active
    # walks stay on the exact python path.
    if cfg.is_active and not cfg.strict and cfg.cost == "restless":
        return False
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return False
    return True


def compute_betweenness(
    g: TemporalGraph,
    cfg: VariantConfig,
    *,
    engine: str = "auto",
    threads: int = 0,
    marginals_only: bool = False,
    normalize: bool = False,
) -> BetweennessResult:
    """B(v,t) with marginals by the per-source pipeline.

    engine selects the per-source implementation: "python" is the exact
    reference path, "numba" the compiled kernels (not every configuration
    is kernel-eligible), "auto" picks kernels when possible.  threads caps
    concurrent source workers (0 = one per CPU); contributions are reduced
    in source-id order, so results are bit-identical for any worker count.
    normalize divides by (n−1)(n−2) for cross-size comparison (no-op for
    n < 3, where B is identically zero).
    """
    if engine not in ("auto", "python", "numba"):
        raise ConfigError(f"unknown engine {engine!r}")
    if engine == "numba" and not _kernel_engine_supports(cfg):
        raise ConfigError(
            f"configuration {cfg.describe()!r} is not kernel-eligible; use engine='python' or 'auto'"
        )
    use_kernels = engine == "numba" or (engine == "auto" and _kernel_engine_supports(cfg))

    n, T = g.n, g.T
    if use_kernels:
        from ._kernels import kernel_betweenness

        b_vt = kernel_betweenness(g, cfg, threads=threads)
    else:
        b_vt = np.zeros((n, T + 1))
        if threads == 1 or n <= 1:
            parts = (source_contribution(g, cfg, s) for s in range(n))
        else:
            workers = threads if threads > 0 else None
            pool = ThreadPoolExecutor(max_workers=workers)
            try:
                parts = list(pool.map(lambda s: source_contribution(g, cfg, s), range(n)))
            finally:
                pool.shutdown()
        for items in parts:
            for v, t, c in items:
                b_vt[v, t] += c

    if normalize and n >= 3:
        b_vt = b_vt / ((n - 1) * (n - 2))
    return finalize_result(
        g,
        cfg,
        b_vt,
        keep_table=not marginals_only,
        extra_provenance={"engine": "numba" if use_kernels else "python", "threads": threads},
    )


def _rank(keys, values):
    from .analysis_cli import Ranking  # lazy: analysis_cli imports this module

    order = sorted(range(len(keys)), key=lambda i: (-values[i], keys[i]))
    return Ranking(tuple((keys[i], float(values[i])) for i in order))


def b_node(result: BetweennessResult):
    """Node ranking by B(v), descending, ties by label-id order."""
    return _rank(list(range(result.n)), result.b_v)


def b_time(result: BetweennessResult):
    """Time ranking by B(t), descending, ties by earlier time."""
    return _rank(list(range(result.T + 1)), result.b_t)
