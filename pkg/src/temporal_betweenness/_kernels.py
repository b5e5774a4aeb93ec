"""Compiled per-source kernels for the betweenness pipeline.

The kernels mirror the python pipeline but avoid materializing predecessor
sets: a predecessor-graph edge is recognized on the fly as an arc whose
head state is registered exactly one BFS level above its tail state.  One
forward sweep in enqueue order pushes arrival counts, one backward sweep
pulls dependency shares and assembles contributions.

Bounded-waiting non-strict active configurations are not kernel-eligible
(their same-time overlap corrections stay on the exact python path); the
engine enforces that routing.  For every eligible configuration the
overlap correction is provably vacuous, so the kernels omit it.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

from .errors import CountOverflowError
from .temporal_graph import TemporalGraph, VariantConfig

INF = np.int64(1) << np.int64(62)
# counts beyond this risk int64 wraparound on the next addition
OVERFLOW_LIMIT = np.int64(1) << np.int64(60)


@njit(cache=True, nogil=True)
def _source_pass(
    n, T, out_t, out_h, out_ptr, in_t, in_ptr,
    s, strict, k, stamps, active, foremost, bvt,
):
    width = T + 1
    dist = np.full(n * width, INF, np.int64)
    registered = np.zeros(n * width, np.bool_)
    relay = np.zeros(n * width, np.int64)
    queue = np.empty(n * width, np.int64)

    qhi = 0
    prev_t = np.int64(-1)
    for j in range(out_ptr[s], out_ptr[s + 1]):
        t = out_t[j]
        if t == prev_t:
            continue
        prev_t = t
        st = s * width + t
        dist[st] = 0
        registered[st] = True
        relay[st] = 1
        queue[qhi] = st
        qhi += 1

    # forward search: register arrivals level by level, stamping later
    # in-times as covered when waiting is unconstrained
    lo = 0
    hi = qhi
    level = np.int64(1)
    while lo < hi:
        for i in range(lo, hi):
            st = queue[i]
            a = st // width
            t = st % width
            a0 = out_ptr[a]
            a1 = out_ptr[a + 1]
            if a == s:
                jlo = a0 + np.searchsorted(out_t[a0:a1], t)
                jhi = a0 + np.searchsorted(out_t[a0:a1], t + 1)
            else:
                if strict:
                    jlo = a0 + np.searchsorted(out_t[a0:a1], t + 1)
                else:
                    jlo = a0 + np.searchsorted(out_t[a0:a1], t)
                jhi = a0 + np.searchsorted(out_t[a0:a1], t + k + 1)
            for j in range(jlo, jhi):
                t1 = out_t[j]
                tgt = out_h[j] * width + t1
                d = dist[tgt]
                if d == INF or (d >= level and not registered[tgt]):
                    dist[tgt] = level
                    registered[tgt] = True
                    queue[qhi] = tgt
                    qhi += 1
                    if stamps:
                        b = out_h[j]
                        b0 = in_ptr[b]
                        b1 = in_ptr[b + 1]
                        rlo = b0 + np.searchsorted(in_t[b0:b1], t1 + 1)
                        rhi = b0 + np.searchsorted(in_t[b0:b1], t1 + k + 1)
                        for jr in range(rlo, rhi):
                            stamp = b * width + in_t[jr]
                            if dist[stamp] > level:
                                dist[stamp] = level
        lo = hi
        hi = qhi
        level += 1

    # forward count push along tight arcs
    for i in range(qhi):
        st = queue[i]
        a = st // width
        t = st % width
        ell = dist[st]
        a0 = out_ptr[a]
        a1 = out_ptr[a + 1]
        if a == s:
            jlo = a0 + np.searchsorted(out_t[a0:a1], t)
            jhi = a0 + np.searchsorted(out_t[a0:a1], t + 1)
        else:
            if strict:
                jlo = a0 + np.searchsorted(out_t[a0:a1], t + 1)
            else:
                jlo = a0 + np.searchsorted(out_t[a0:a1], t)
            jhi = a0 + np.searchsorted(out_t[a0:a1], t + k + 1)
        for j in range(jlo, jhi):
            tgt = out_h[j] * width + out_t[j]
            if registered[tgt] and dist[tgt] == ell + 1:
                relay[tgt] += relay[st]
                if relay[tgt] > OVERFLOW_LIMIT:
                    return 1

    # per-node optimum and pair denominators
    c_best = np.full(n, INF, np.int64)
    t_best = np.full(n, -1, np.int64)
    pair = np.zeros(n, np.int64)
    for v in range(n):
        if v == s:
            continue
        row = v * width
        if foremost:
            for t in range(width):
                if registered[row + t]:
                    t_best[v] = t
                    c_best[v] = dist[row + t]
                    pair[v] = relay[row + t]
                    break
        else:
            best = INF
            for t in range(width):
                if registered[row + t] and dist[row + t] < best:
                    best = dist[row + t]
            if best < INF:
                c_best[v] = best
                acc = np.int64(0)
                for t in range(width):
                    if registered[row + t] and dist[row + t] == best:
                        acc += relay[row + t]
                pair[v] = acc

    # backward dependency pull and contribution assembly
    D = np.zeros(n * width, np.float64)
    diff = np.zeros(n * (width + 1), np.float64)
    for i in range(qhi - 1, -1, -1):
        st = queue[i]
        a = st // width
        t = st % width
        ell = dist[st]
        a0 = out_ptr[a]
        a1 = out_ptr[a + 1]
        if a == s:
            jlo = a0 + np.searchsorted(out_t[a0:a1], t)
            jhi = a0 + np.searchsorted(out_t[a0:a1], t + 1)
        else:
            if strict:
                jlo = a0 + np.searchsorted(out_t[a0:a1], t + 1)
            else:
                jlo = a0 + np.searchsorted(out_t[a0:a1], t)
            jhi = a0 + np.searchsorted(out_t[a0:a1], t + k + 1)
        succ_total = 0.0
        for j in range(jlo, jhi):
            t1 = out_t[j]
            tgt = out_h[j] * width + t1
            if registered[tgt] and dist[tgt] == ell + 1:
                dv = D[tgt]
                succ_total += dv
                if active and a != s:
                    wt = relay[st] * dv
                    diff[a * (width + 1) + t] += wt
                    diff[a * (width + 1) + t1 + 1] -= wt
        base = 0.0
        if a != s:
            if foremost:
                if t == t_best[a]:
                    base = 1.0 / pair[a]
            elif ell == c_best[a]:
                base = 1.0 / pair[a]
            if not active:
                bvt[a, t] += relay[st] * succ_total
        D[st] = succ_total + base

    if active:
        # spread interval masses; terminal bands cancel against the
        # endpoint share in the update rule, so only transit mass remains
        for v in range(n):
            if v == s:
                continue
            run = 0.0
            row = v * (width + 1)
            for t in range(width):
                run += diff[row + t]
                if run != 0.0:
                    bvt[v, t] += run
    return 0


def _csr_arrays(g: TemporalGraph):
    n = g.n
    counts = np.zeros(n + 1, np.int64)
    for u, _, _ in g.arcs:
        counts[u + 1] += 1
    out_ptr = np.cumsum(counts)
    out_t = np.empty(g.m, np.int64)
    out_h = np.empty(g.m, np.int64)
    for v in range(n):
        base = out_ptr[v]
        for i, (t, h) in enumerate(g.out_arcs[v]):
            out_t[base + i] = t
            out_h[base + i] = h
    in_ptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        in_ptr[v + 1] = in_ptr[v] + len(g.in_times[v])
    in_t = np.empty(int(in_ptr[-1]), np.int64)
    for v in range(n):
        row = g.in_times[v]
        in_t[in_ptr[v] : in_ptr[v] + len(row)] = row
    return out_t, out_h, out_ptr, in_t, in_ptr


def kernel_betweenness(g: TemporalGraph, cfg: VariantConfig, threads: int = 0) -> np.ndarray:
    """Unreduced B(v,t) over all sources via the compiled per-source pass."""
    n, T = g.n, g.T
    out_t, out_h, out_ptr, in_t, in_ptr = _csr_arrays(g)
    k = cfg.effective_k(T)
    stamps = cfg.is_active and k >= T
    args = (out_t, out_h, out_ptr, in_t, in_ptr)
    flags = (cfg.strict, np.int64(k), stamps, cfg.is_active, cfg.cost == "foremost")

    def run_source(s: int) -> np.ndarray:
        part = np.zeros((n, T + 1))
        status = _source_pass(n, T, *args, s, *flags, part)
        if status:
            raise CountOverflowError(f"walk counts from source {s} exceed the 64-bit budget")
        return part

    total = np.zeros((n, T + 1))
    if threads == 1 or n <= 1:
        for s in range(n):
            total += run_source(s)
        return total
    workers = threads if threads > 0 else min(32, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(run_source, range(n)):
            total += part
    return total
