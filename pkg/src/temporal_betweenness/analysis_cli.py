"""Rankings, ranking comparison, the prefix experiment, and the CLI.

Ranking order is always descending by value with ties broken by ascending
key; every comparison helper validates its inputs and raises ConfigError
(argument error, exit code 2) rather than guessing.
"""

from __future__ import annotations

import argparse
import math
import sys

from scipy.stats import kendalltau as _kendalltau

from .betweenness_engine import BetweennessResult, b_node, compute_betweenness
from .errors import (
    ConfigError,
    CountOverflowError,
    GraphFormatError,
    InvariantError,
    SizeGuardError,
)
from .exhaustive_oracle import oracle_betweenness
from .static_baseline import brandes_static
from .temporal_graph import (
    TemporalGraph,
    VariantConfig,
    aggregate_static,
    compress_times,
    parse_edge_list,
    prefix_graph,
)

__all__ = ["Ranking", "kendall_tau", "top_k_intersection", "prefix_scan", "time_histogram", "main"]


class Ranking(tuple):
    """(key, value) pairs, descending by value, ties by ascending key."""

    __slots__ = ()

    def __new__(cls, items):
        items = tuple((k, float(v)) for k, v in items)
        if list(items) != sorted(items, key=lambda kv: (-kv[1], kv[0])):
            raise ConfigError("ranking rows are not in descending-value, ascending-key order")
        return super().__new__(cls, items)

    @classmethod
    def from_table(cls, table) -> "Ranking":
        """Build from an unordered {key: value} mapping or (key, value) pairs."""
        items = table.items() if hasattr(table, "items") else table
        return cls(sorted(items, key=lambda kv: (-kv[1], kv[0])))

    def ordered_keys(self) -> tuple:
        # deliberately not named keys(): dict() would mistake a Ranking
        # for a mapping and subscript it by key
        return tuple(k for k, _ in self)

    def top(self, k: int) -> frozenset:
        return frozenset(key for key, _ in self[:k])


def _aligned_values(r1: Ranking, r2: Ranking) -> tuple[list, list]:
    d1, d2 = dict(iter(r1)), dict(iter(r2))
    if set(d1) != set(d2):
        raise ConfigError("rankings cover different key domains")
    keys = sorted(d1)
    return [d1[k] for k in keys], [d2[k] for k in keys]


def kendall_tau(r1: Ranking, r2: Ranking) -> float:
    """Tie-corrected (tau-b) rank correlation of two rankings.

    Identical value vectors give 1.0 even when everything is tied (relevant
    for all-zero centralities); a constant ranking compared against a
    non-constant one carries no order information and yields 0.0.
    """
    x, y = _aligned_values(r1, r2)
    if x == y:
        return 1.0
    tau = _kendalltau(x, y, variant="b").statistic
    return 0.0 if math.isnan(tau) else float(tau)


def top_k_intersection(r1: Ranking, r2: Ranking, k: int) -> int:
    """|top-k(r1) ∩ top-k(r2)| under the documented tie-break."""
    if not isinstance(k, int) or k < 1 or k > min(len(r1), len(r2)):
        raise ConfigError(f"top-k size {k!r} is outside 1..{min(len(r1), len(r2))}")
    return len(r1.top(k) & r2.top(k))


def prefix_scan(
    g: TemporalGraph,
    cfg: VariantConfig,
    mus,
    k: int,
    threads: int = 0,
) -> list[tuple[float, int]]:
    """Top-k node overlap between each time-prefix graph and the full graph.

    For each mu the graph restricted to arcs at times <= floor(mu*T) is
    scored with the same configuration (a restless bound is held fixed, not
    rescaled) and its node ranking's top k is intersected with the full
    graph's.  mu = 0 usually leaves no arcs: the all-zero ranking
    degenerates to id order, so the overlap is whatever of the full top-k
    falls in the first k ids.
    """
    full = b_node(compute_betweenness(g, cfg, threads=threads))
    out = []
    for mu in mus:
        sub = prefix_graph(g, mu)
        rank = b_node(compute_betweenness(sub, cfg, threads=threads))
        out.append((float(mu), top_k_intersection(rank, full, k)))
    return out


def time_histogram(result: BetweennessResult, bins: int) -> list[tuple[int, float]]:
    """B(t) mass aggregated into equal-width bins over [0, T].

    Bin i covers [i*T/bins, (i+1)*T/bins), with the last bin closed so
    t = T lands in bin bins-1.
    """
    if not isinstance(bins, int) or bins < 1:
        raise ConfigError(f"bins must be a positive integer, got {bins!r}")
    masses = [0.0] * bins
    T = result.T
    for t in range(T + 1):
        idx = min(bins - 1, t * bins // T) if T else 0
        masses[idx] += float(result.b_t[t])
    return list(enumerate(masses))


# ---------------------------------------------------------------------------
# command-line surface


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="edge list file: 'u v t' per line")
    p.add_argument("--directed", action="store_true", help="treat arcs as directed (default: undirected)")


def _add_variant_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", required=True, choices=("shortest", "restless", "foremost"))
    p.add_argument("--walk-type", required=True, choices=("active", "passive"))
    p.add_argument("--strict", action="store_true", help="transition times must strictly increase")
    p.add_argument("--k", type=int, default=None, help="restless waiting bound")
    p.add_argument("--k-fraction", type=float, default=None, help="restless bound as a fraction of T (default 0.1)")


def _build_config(args, T: int) -> VariantConfig:
    k = None
    if args.variant == "restless":
        if args.k is not None and args.k_fraction is not None:
            raise ConfigError("--k and --k-fraction are mutually exclusive")
        if args.k is not None:
            k = args.k
        else:
            frac = 0.1 if args.k_fraction is None else args.k_fraction
            if not 0 < frac <= 1:
                raise ConfigError(f"--k-fraction must be in (0, 1], got {frac!r}")
            k = math.ceil(frac * T - 1e-9)
    elif args.k is not None or args.k_fraction is not None:
        raise ConfigError("--k/--k-fraction are only meaningful with --variant restless")
    return VariantConfig(args.variant, args.walk_type, args.strict, k)


def _load_graph(args) -> TemporalGraph:
    with open(args.input, encoding="utf-8") as fh:
        return parse_edge_list(fh, directed=args.directed)


def _write_rows(path: str, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_result_csvs(prefix: str, res: BetweennessResult, full_table: bool) -> None:
    labels = res.labels
    if full_table:
        _write_rows(
            prefix + ".bvt.csv",
            "node,time,value",
            (
                (labels[v], str(t), _fmt(res.b_vt[v, t]))
                for v in range(res.n)
                for t in range(res.T + 1)
            ),
        )
    _write_rows(prefix + ".bv.csv", "node,value", ((labels[v], _fmt(res.b_v[v])) for v in range(res.n)))
    _write_rows(prefix + ".bt.csv", "time,value", ((str(t), _fmt(res.b_t[t])) for t in range(res.T + 1)))


def _read_ranking(path: str) -> Ranking:
    """Two-column key,value CSV (as written by compute/static) -> Ranking.

    Keys that all parse as integers are compared numerically, so time
    rankings tie-break as 2 < 10 rather than alphabetically.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    rows = []
    for ln in lines[1:]:
        key, _, val = ln.rpartition(",")
        rows.append((key, float(val)))
    try:
        rows = [(int(k), v) for k, v in rows]
    except ValueError:
        pass
    return Ranking.from_table(rows)


def _cmd_compute(args) -> int:
    g = _load_graph(args)
    if args.compress_times:
        g = compress_times(g)
    cfg = _build_config(args, g.T)
    res = compute_betweenness(
        g,
        cfg,
        threads=args.threads,
        marginals_only=args.marginals_only,
        normalize=args.normalize,
    )
    _write_result_csvs(args.out_prefix, res, full_table=not args.marginals_only)
    return 0


def _cmd_static(args) -> int:
    g = _load_graph(args)
    table = brandes_static(aggregate_static(g))
    _write_rows(args.out, "node,value", ((g.labels[v], _fmt(table[v])) for v in range(g.n)))
    return 0


def _cmd_compare(args) -> int:
    r1 = _read_ranking(args.a)
    r2 = _read_ranking(args.b)
    print(f"tau={_fmt(kendall_tau(r1, r2))}")
    print(f"topk={top_k_intersection(r1, r2, args.top)}")
    return 0


def _cmd_prefix_scan(args) -> int:
    g = _load_graph(args)
    cfg = _build_config(args, g.T)
    try:
        mus = [float(x) for x in args.mus.split(",") if x]
    except ValueError as exc:
        raise ConfigError(f"--mus must be a comma-separated list of reals: {exc}") from None
    rows = prefix_scan(g, cfg, mus, args.top, threads=args.threads)
    _write_rows(args.out, "mu,intersection", ((_fmt(mu), str(i)) for mu, i in rows))
    return 0


def _cmd_oracle(args) -> int:
    g = _load_graph(args)
    cfg = _build_config(args, g.T)
    res = oracle_betweenness(g, cfg)
    _write_result_csvs(args.out_prefix, res, full_table=True)
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tbc", description="Temporal betweenness centrality toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="betweenness of every temporal node, plus marginals")
    _add_input_flags(p)
    _add_variant_flags(p)
    p.add_argument("--normalize", action="store_true", help="divide by (n-1)(n-2)")
    p.add_argument("--compress-times", action="store_true", help="remap arc times to 1..#distinct")
    p.add_argument("--marginals-only", action="store_true", help="skip the full B(v,t) table")
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--threads", type=int, default=0, help="engine workers (0 = auto)")
    p.set_defaults(fn=_cmd_compute)

    p = sub.add_parser("static", help="Brandes betweenness of the aggregated digraph")
    _add_input_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_static)

    p = sub.add_parser("compare", help="Kendall tau-b and top-K overlap of two ranking CSVs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("prefix-scan", help="top-k stability of rankings on time-prefix graphs")
    _add_input_flags(p)
    _add_variant_flags(p)
    p.add_argument("--mus", required=True, help="comma-separated fractions in [0,1]")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(fn=_cmd_prefix_scan)

    p = sub.add_parser("oracle", help="brute-force enumeration result (small graphs only)")
    _add_input_flags(p)
    _add_variant_flags(p)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(fn=_cmd_oracle)

    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InvariantError, CountOverflowError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
