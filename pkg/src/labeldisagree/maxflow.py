"""Exact integral s-t maximum flow (Dinic's blocking-flow algorithm).

Capacities are int64.  The search order is fixed by the arc order handed in,
so the flow and the returned cut are deterministic for a given graph.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _bfs_levels(n, s, start, head, cap, level, queue):
    level[:] = -1
    level[s] = 0
    qh, qt = 0, 1
    queue[0] = s
    while qh < qt:
        u = queue[qh]
        qh += 1
        for e in range(start[u], start[u + 1]):
            v = head[e]
            if cap[e] > 0 and level[v] < 0:
                level[v] = level[u] + 1
                queue[qt] = v
                qt += 1


@njit(cache=True)
def _dinic(n, s, t, start, head, tail, rev, cap):
    level = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    path = np.empty(n, np.int64)
    flow = 0
    phases = 0
    augments = 0
    while True:
        _bfs_levels(n, s, start, head, cap, level, queue)
        if level[t] < 0:
            break
        phases += 1
        for u in range(n):
            it[u] = start[u]
        top = 0
        u = s
        while True:
            if u == t:
                b = cap[path[0]]
                for i in range(1, top):
                    if cap[path[i]] < b:
                        b = cap[path[i]]
                first = -1
                for i in range(top):
                    e = path[i]
                    cap[e] -= b
                    cap[rev[e]] += b
                    if first < 0 and cap[e] == 0:
                        first = i
                flow += b
                augments += 1
                top = first
                u = tail[path[first]]
                continue
            advanced = False
            while it[u] < start[u + 1]:
                e = it[u]
                v = head[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    path[top] = e
                    top += 1
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if u == s:
                    break
                level[u] = -1
                top -= 1
                u = tail[path[top]]
                it[u] += 1
    _bfs_levels(n, s, start, head, cap, level, queue)
    return flow, phases, augments, level >= 0


def max_flow(
    n_vars: int,
    tails: np.ndarray,
    heads: np.ndarray,
    caps: np.ndarray,
    src: np.ndarray | None = None,
    snk: np.ndarray | None = None,
) -> tuple[int, np.ndarray, dict]:
    """Maximum flow from an implicit source to an implicit sink.

    ``tails[j] -> heads[j]`` carries ``caps[j]``; ``src[i]`` is the capacity of
    source -> i and ``snk[i]`` of i -> sink.  Returns ``(flow, source_side,
    stats)`` where ``source_side[i]`` is True for variables reachable from the
    source in the final residual graph (the minimum cut closest to the source).
    """
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    caps = np.asarray(caps, dtype=np.int64)
    src = np.zeros(n_vars, np.int64) if src is None else np.asarray(src, dtype=np.int64).copy()
    snk = np.zeros(n_vars, np.int64) if snk is None else np.asarray(snk, dtype=np.int64).copy()
    if (caps < 0).any() or (src < 0).any() or (snk < 0).any():
        raise ValueError("capacities must be nonnegative")
    if len(tails) and (tails == heads).any():
        raise ValueError("self-loops are not allowed")

    # paths s -> i -> t are saturated up front
    both = np.minimum(src, snk)
    base = int(both.sum())
    src -= both
    snk -= both

    s, t = n_vars, n_vars + 1
    si = np.flatnonzero(src > 0)
    ti = np.flatnonzero(snk > 0)
    u = np.concatenate([tails, np.full(len(si), s), ti])
    v = np.concatenate([heads, si, np.full(len(ti), t)])
    c = np.concatenate([caps, src[si], snk[ti]])
    m = len(u)

    # half-arcs: 2j forward, 2j + 1 reverse; group by tail, keep input order
    hu = np.empty(2 * m, np.int64)
    hv = np.empty(2 * m, np.int64)
    hc = np.zeros(2 * m, np.int64)
    hu[0::2], hu[1::2] = u, v
    hv[0::2], hv[1::2] = v, u
    hc[0::2] = c
    order = np.argsort(hu, kind="stable")
    pos = np.empty(2 * m, np.int64)
    pos[order] = np.arange(2 * m)
    rev = pos[np.arange(2 * m) ^ 1][order]
    n = n_vars + 2
    start = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(hu, minlength=n), out=start[1:])

    flow, phases, augments, reach = _dinic(
        n, s, t, start, hv[order], hu[order], rev, hc[order]
    )
    stats = {"phases": int(phases), "augmentations": int(augments), "arcs": int(m)}
    return base + int(flow), reach[:n_vars].copy(), stats
