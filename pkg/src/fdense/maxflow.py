"""Highest-label push-relabel with gap relabeling and periodic global relabeling.

Only the first (preflow) phase runs: it already fixes the minimum cut. The
sink side is the set of nodes that can still reach t in the residual
network, so the returned source side is the maximal minimum cut.

The kernel is compiled by numba for int64/float64 capacities; for Python-int
(object) capacities the same code runs uncompiled through ``py_func``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit


@njit(cache=True)
def _hlpp(N, s, t, start, head, rev, res, excess, eps, sink_side):
    INF = N
    height = np.full(N, INF, dtype=np.int64)
    count = np.zeros(N + 1, dtype=np.int64)
    cur = start[:N].copy()
    bhead = np.full(N + 1, -1, dtype=np.int64)
    bnext = np.full(N, -1, dtype=np.int64)
    inb = np.zeros(N, dtype=np.bool_)
    queue = np.empty(N, dtype=np.int64)

    for a in range(start[s], start[s + 1]):
        c = res[a]
        if c > eps:
            v = head[a]
            res[a] -= c
            res[rev[a]] += c
            excess[v] += c
            excess[s] -= c

    hmax = 0
    relabels = 0
    need_global = True
    while True:
        if need_global:
            # exact distances to t in the residual network; unreachable nodes drop out
            need_global = False
            relabels = 0
            for v in range(N):
                height[v] = INF
                inb[v] = False
                bnext[v] = -1
            for h in range(N + 1):
                count[h] = 0
                bhead[h] = -1
            height[t] = 0
            qh, qt = 0, 1
            queue[0] = t
            while qh < qt:
                v = queue[qh]
                qh += 1
                for a in range(start[v], start[v + 1]):
                    u = head[a]
                    if height[u] == INF and u != s and res[rev[a]] > eps:
                        height[u] = height[v] + 1
                        queue[qt] = u
                        qt += 1
            hmax = 0
            for v in range(N):
                cur[v] = start[v]
                if height[v] < INF:
                    count[height[v]] += 1
                    if v != t and excess[v] > eps:
                        bnext[v] = bhead[height[v]]
                        bhead[height[v]] = v
                        inb[v] = True
                        if height[v] > hmax:
                            hmax = height[v]

        while hmax >= 0 and bhead[hmax] == -1:
            hmax -= 1
        if hmax < 0:
            break
        u = bhead[hmax]
        bhead[hmax] = bnext[u]
        inb[u] = False
        if height[u] != hmax or excess[u] <= eps:
            continue

        # discharge u
        while excess[u] > eps:
            if cur[u] == start[u + 1]:
                old = height[u]
                newh = INF
                for a in range(start[u], start[u + 1]):
                    if res[a] > eps and height[head[a]] + 1 < newh:
                        newh = height[head[a]] + 1
                count[old] -= 1
                relabels += 1
                if count[old] == 0:
                    # gap: nothing above old can reach t any more
                    for v in range(N):
                        if height[v] > old and height[v] < INF:
                            count[height[v]] -= 1
                            height[v] = INF
                    height[u] = INF
                    break
                if newh >= INF:
                    height[u] = INF
                    break
                height[u] = newh
                count[newh] += 1
                cur[u] = start[u]
                continue
            a = cur[u]
            v = head[a]
            if res[a] > eps and height[u] == height[v] + 1:
                d = excess[u] if excess[u] < res[a] else res[a]
                res[a] -= d
                res[rev[a]] += d
                excess[u] -= d
                excess[v] += d
                if v != t and v != s and not inb[v] and excess[v] > eps:
                    bnext[v] = bhead[height[v]]
                    bhead[height[v]] = v
                    inb[v] = True
                    if height[v] > hmax:
                        hmax = height[v]
            else:
                cur[u] += 1
        if excess[u] > eps and height[u] < INF and not inb[u]:
            bnext[u] = bhead[height[u]]
            bhead[height[u]] = u
            inb[u] = True
            if height[u] > hmax:
                hmax = height[u]
        if relabels > N:
            need_global = True

    # sink side: nodes that reach t through residual arcs
    for v in range(N):
        sink_side[v] = False
    sink_side[t] = True
    queue[0] = t
    qh, qt = 0, 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        for a in range(start[v], start[v + 1]):
            u = head[a]
            if not sink_side[u] and res[rev[a]] > eps:
                sink_side[u] = True
                queue[qt] = u
                qt += 1


@dataclass(frozen=True)
class MaxFlowResult:
    value: object          # flow into t, in the capacity dtype
    source_side: np.ndarray  # boolean mask of the maximal minimum-cut source side


def max_flow(N: int, s: int, t: int, tail: np.ndarray, head: np.ndarray, cap: np.ndarray,
             reverse_cap: np.ndarray | None = None, eps=0) -> MaxFlowResult:
    """Max flow / min cut on arcs ``tail[i] -> head[i]`` with capacity ``cap[i]``.

    Each arc gets a residual partner carrying ``reverse_cap[i]`` (default 0),
    so an antiparallel pair of arcs can share one residual pair.
    ``eps`` is the residual threshold for float capacities.
    """
    A = len(tail)
    if reverse_cap is None:
        reverse_cap = np.zeros_like(cap)
    all_tail = np.concatenate([tail, head]).astype(np.int64)
    all_head = np.concatenate([head, tail]).astype(np.int64)
    res0 = np.concatenate([cap, reverse_cap])
    partner = np.concatenate([np.arange(A, 2 * A), np.arange(A)])
    order = np.argsort(all_tail, kind="stable")
    inv = np.empty(2 * A, dtype=np.int64)
    inv[order] = np.arange(2 * A)
    start = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(np.bincount(all_tail, minlength=N), out=start[1:])
    head_s = all_head[order]
    rev_s = inv[partner[order]]
    res = res0[order].copy()
    excess = np.zeros(N, dtype=res.dtype)
    sink_side = np.zeros(N, dtype=np.bool_)
    if res.dtype == object:
        _hlpp.py_func(N, s, t, start, head_s, rev_s, res, excess, eps, sink_side)
    else:
        _hlpp(N, s, t, start, head_s, rev_s, res, excess, res.dtype.type(eps), sink_side)
    return MaxFlowResult(excess[t], ~sink_side)
