"""Temporal-graph data model, edge-list ingestion, and derived graphs.

A temporal graph is a triple (V, arcs, T) where every arc (u, v, t) is a
directed contact at an integer time 0 <= t <= T.  Node labels are arbitrary
non-whitespace tokens, interned to dense integer ids in first-appearance
order; all algorithms work on the dense ids.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Iterator, Sequence

from .errors import ConfigError, GraphFormatError

Arc = tuple[int, int, int]  # (u, v, t) over dense node ids


class TemporalGraph:
    """Immutable temporal graph over dense node ids 0..n-1.

    ``horizon`` may exceed the largest arc time (a graph can be observed
    longer than its last contact); it defaults to the largest arc time, or 0
    for an arc-free graph.
    """

    __slots__ = ("_labels", "_arcs", "_T", "_directed", "_id_of", "__dict__")

    def __init__(
        self,
        labels: Sequence[str],
        arcs: Iterable[tuple[int, int, int]],
        T: int | None = None,
        directed: bool = True,
    ):
        self._labels = tuple(str(x) for x in labels)
        if len(set(self._labels)) != len(self._labels):
            raise GraphFormatError("duplicate node labels")
        self._id_of = {lab: i for i, lab in enumerate(self._labels)}
        n = len(self._labels)

        seen: set[Arc] = set()
        for u, v, t in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"arc ({u},{v},{t}) references an unknown node id")
            if u == v:
                raise GraphFormatError(f"self-loop on node id {u} at time {t}")
            if t < 0:
                raise GraphFormatError(f"negative time {t} on arc ({u},{v})")
            seen.add((u, v, t))
        self._arcs: tuple[Arc, ...] = tuple(sorted(seen))

        max_t = max((t for _, _, t in self._arcs), default=0)
        if T is None:
            T = max_t
        elif T < max_t:
            raise GraphFormatError(f"horizon T={T} is smaller than the largest arc time {max_t}")
        self._T = int(T)
        self._directed = bool(directed)

    # -- basic accessors ---------------------------------------------------

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self._arcs

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def m(self) -> int:
        return len(self._arcs)

    @property
    def T(self) -> int:
        return self._T

    @property
    def directed(self) -> bool:
        return self._directed

    def id_of(self, label: str) -> int:
        return self._id_of[label]

    def label_of(self, node: int) -> str:
        return self._labels[node]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._arcs == other._arcs
            and self._T == other._T
            and self._directed == other._directed
        )

    def __hash__(self) -> int:
        return hash((self._labels, self._arcs, self._T, self._directed))

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, m={self.m}, T={self.T}, directed={self._directed})"

    # -- derived adjacency (cached, read-only) ------------------------------

    @cached_property
    def out_arcs(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, (t, head) pairs sorted by time then head id."""
        buckets: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, t in self._arcs:
            buckets[u].append((t, v))
        return tuple(tuple(sorted(b)) for b in buckets)

    @cached_property
    def in_times(self) -> tuple[tuple[int, ...], ...]:
        """Per node, sorted distinct times at which some arc arrives."""
        buckets: list[set[int]] = [set() for _ in range(self.n)]
        for _, v, t in self._arcs:
            buckets[v].add(t)
        return tuple(tuple(sorted(b)) for b in buckets)

    @cached_property
    def distinct_times(self) -> tuple[int, ...]:
        return tuple(sorted({t for _, _, t in self._arcs}))

    def fingerprint(self) -> str:
        """Content hash used for result provenance."""
        h = hashlib.sha256()
        h.update(repr((self._labels, self._arcs, self._T, self._directed)).encode())
        return h.hexdigest()[:16]


@dataclass(frozen=True)
class VariantConfig:
    """Walk-cost variant: which walks are optimal and how nodes are visited.

    cost       -- "shortest" | "restless" | "foremost"
    walk_type  -- "passive" (visits are the exact arrival points) or
                  "active" (a walk occupies a node from arrival to departure,
                  and an optimal walk occupies its last node through T)
    strict     -- consecutive transition times must strictly increase
    k          -- maximal waiting time between transitions (restless only);
                  math.inf normalizes to plain shortest
    """

    cost: str = "shortest"
    walk_type: str = "passive"
    strict: bool = False
    k: int | None = None

    def __post_init__(self):
        if self.cost not in ("shortest", "restless", "foremost"):
            raise ConfigError(f"unknown cost criterion {self.cost!r}")
        if self.walk_type not in ("passive", "active"):
            raise ConfigError(f"unknown walk type {self.walk_type!r}")
        if self.cost == "foremost" and self.walk_type == "active":
            raise ConfigError("active foremost walks are not computable by this pipeline")
        if self.cost == "restless":
            if self.k is None:
                raise ConfigError("restless cost requires a waiting bound k")
            if self.k == math.inf:
                # unbounded waiting is plain shortest
                object.__setattr__(self, "cost", "shortest")
                object.__setattr__(self, "k", None)
            elif not isinstance(self.k, int) or self.k < 1:
                raise ConfigError(f"waiting bound k must be a positive integer, got {self.k!r}")
        elif self.k is not None:
            raise ConfigError(f"waiting bound k is only meaningful for restless cost")

    def effective_k(self, T: int) -> int:
        """Waiting bound actually applied on a horizon-T graph (T is vacuous)."""
        return self.k if self.cost == "restless" else T

    @property
    def is_active(self) -> bool:
        return self.walk_type == "active"

    def describe(self) -> str:
        parts = [self.walk_type, self.cost]
        if self.cost == "restless":
            parts.append(f"k={self.k}")
        parts.append("strict" if self.strict else "non-strict")
        return " ".join(parts)


@dataclass(frozen=True)
class StaticGraph:
    """Time-projected digraph sharing the temporal graph's id space."""

    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.labels)


def parse_edge_list(text: str | IO[str] | Iterable[str], directed: bool = True) -> TemporalGraph:
    """Parse "u v t" lines into a TemporalGraph.

    Fields are whitespace-separated; u and v are arbitrary non-whitespace
    labels and t is a non-negative decimal integer.  Lines starting with '#'
    and blank lines are ignored.  With directed=False every line yields both
    arc directions.  Labels get dense ids in first-appearance order.
    """
    if hasattr(text, "read"):
        lines: Iterator[str] = iter(text.read().splitlines())
    elif isinstance(text, str):
        lines = iter(text.splitlines())
    else:
        lines = iter(text)

    labels: list[str] = []
    ids: dict[str, int] = {}

    def intern(tok: str) -> int:
        if tok not in ids:
            ids[tok] = len(labels)
            labels.append(tok)
        return ids[tok]

    arcs: list[Arc] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise GraphFormatError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        su, sv, st = fields
        try:
            t = int(st)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: time {st!r} is not an integer") from None
        if t < 0:
            raise GraphFormatError(f"line {lineno}: negative time {t}")
        if su == sv:
            raise GraphFormatError(f"line {lineno}: self-loop on {su!r}")
        u, v = intern(su), intern(sv)
        arcs.append((u, v, t))
        if not directed:
            arcs.append((v, u, t))

    if not arcs:
        raise GraphFormatError("graph has no arcs")
    return TemporalGraph(labels, arcs, directed=directed)


def serialize_edge_list(g: TemporalGraph) -> str:
    """Canonical edge-list text: one "u v t" line per arc, sorted by dense id.

    Isolated nodes are not representable in this format, so parse o serialize
    is the identity only on graphs without them (the canonical case).
    """
    out = []
    for u, v, t in sorted(g.arcs):
        out.append(f"{g.label_of(u)} {g.label_of(v)} {t}")
    return "\n".join(out) + "\n"


def aggregate_static(g: TemporalGraph) -> StaticGraph:
    """Project away time: one static edge per arced node pair."""
    return StaticGraph(g.labels, frozenset((u, v) for u, v, _ in g.arcs))


def prefix_graph(g: TemporalGraph, mu: float) -> TemporalGraph:
    """Restriction of g to its first mu fraction of time: arcs with t <= floor(mu*T).

    The node set is unchanged.  A small epsilon absorbs binary-float error in
    mu*T (so mu=0.3 on T=10 thresholds at 3, not 2).
    """
    if not 0 <= mu <= 1:
        raise ConfigError(f"mu must lie in [0, 1], got {mu}")
    thr = math.floor(mu * g.T + 1e-9)
    return TemporalGraph(
        g.labels,
        [a for a in g.arcs if a[2] <= thr],
        T=thr,
        directed=g.directed,
    )


def compress_times(g: TemporalGraph) -> TemporalGraph:
    """Remap distinct arc times to consecutive integers 1..D (preserving order).

    Changes active per-time values and foremost costs (both depend on the
    actual gaps), so this is an opt-in ingestion step, never a default.
    """
    remap = {t: i for i, t in enumerate(g.distinct_times, start=1)}
    return TemporalGraph(
        g.labels,
        [(u, v, remap[t]) for u, v, t in g.arcs],
        T=len(remap) if g.arcs else 0,
        directed=g.directed,
    )
