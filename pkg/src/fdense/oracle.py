"""Exhaustive ground truth over all 2^n subsets (n <= 24).

Subset weights are built by doubling: the masks containing vertex ``i`` are
the masks without it plus the weight of edges from ``i`` into them. This
keeps the scan at O(2^n) vectorized integer work and shares no code with
the solvers it checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import GuardError
from .graph import Graph
from .numeric import DEFAULT_TOL, cmp_ratio, is_exact
from .sizefn import SizeFunction

MAX_N = 24


@dataclass(frozen=True)
class OracleReport:
    n: int
    best_weight: tuple[Fraction, ...]           # w(S_i*) for i = 0..n
    best_witness: tuple[tuple[int, ...], ...]   # lexicographically smallest S_i*
    frontier: tuple[tuple[int, Fraction], ...]
    f: SizeFunction | None = None
    fds_value: object = None
    fds_sizes: tuple[int, ...] = ()
    fds_witness: tuple[int, ...] | None = None

    def max_density_at_least(self, k: int) -> Fraction:
        """max w(S)/|S| over |S| >= k."""
        return max(self.best_weight[i] / i for i in range(max(k, 1), self.n + 1))

    def max_density_at_most(self, k: int) -> Fraction:
        return max(self.best_weight[i] / i for i in range(1, k + 1))

    def min_cut_value(self, f: SizeFunction, beta) -> object:
        """min over all S of beta*f(|S|) - w(S); the empty set contributes 0."""
        vals = f.table(self.n)
        if is_exact(beta) and f.exact:
            return min(beta * vals[i] - self.best_weight[i] for i in range(self.n + 1))
        return min(float(beta) * float(vals[i]) - float(self.best_weight[i]) for i in range(self.n + 1))


def _masks_to_members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def _subset_tables(g: Graph):
    n = g.n
    dtype = object if g.wnum.dtype == object else np.int64
    adj = np.zeros((n, n), dtype=dtype)
    for e in range(g.m):
        u, v = int(g.src[e]), int(g.dst[e])
        adj[u, v] = adj[v, u] = g.wnum[e]
    weight = np.zeros(1, dtype=dtype)
    popcount = np.zeros(1, dtype=np.int8)
    lexkey = np.zeros(1, dtype=np.int64)
    for i in range(n):
        into = np.zeros(1, dtype=dtype)
        for u in range(i):
            into = np.concatenate([into, into + adj[u, i]])
        weight = np.concatenate([weight, weight + into])
        popcount = np.concatenate([popcount, popcount + 1])
        # vertex 0 is the most significant bit: a larger key is lexicographically smaller among equal sizes
        lexkey = np.concatenate([lexkey, lexkey + (1 << (n - 1 - i))])
    return weight, popcount, lexkey


def _frontier(best: tuple[Fraction, ...]) -> tuple[tuple[int, Fraction], ...]:
    # (i, w_i) is a frontier point iff some lambda > 0 makes it the unique maximizer of y - lambda x.
    n = len(best) - 1
    out = []
    for i in range(n + 1):
        lo = Fraction(0)
        hi = None
        for j in range(n + 1):
            if j < i:
                s = (best[i] - best[j]) / (i - j)
                hi = s if hi is None else min(hi, s)
            elif j > i:
                lo = max(lo, (best[j] - best[i]) / (j - i))
        if hi is None or lo < hi:
            out.append((i, best[i]))
    return tuple(out)


def enumerate_subsets(g: Graph, f: SizeFunction | None = None, tol: float = DEFAULT_TOL,
                      max_n: int = MAX_N) -> OracleReport:
    """Scan every subset of V; optionally evaluate the f-DS optimum."""
    n = g.n
    if n > max_n:
        raise GuardError(f"oracle limited to n <= {max_n}, got n = {n}")
    weight, popcount, lexkey = _subset_tables(g)
    best_w, best_s = [], []
    for i in range(n + 1):
        sel = np.flatnonzero(popcount == i)
        ws = weight[sel]
        top = ws.max()
        tied = sel[ws == top]
        pick = tied[np.argmax(lexkey[tied])]
        best_w.append(Fraction(int(top), g.wden))
        best_s.append(_masks_to_members(int(pick), n))
    report = dict(n=n, best_weight=tuple(best_w), best_witness=tuple(best_s), frontier=_frontier(tuple(best_w)))
    if f is None:
        return OracleReport(**report)
    vals = f.table(n)
    sizes = [i for i in range(2, n + 1) if vals[i] > 0]
    top = sizes[0]
    for i in sizes[1:]:
        if cmp_ratio(best_w[i], vals[i], best_w[top], vals[top], tol) > 0:
            top = i
    opt_sizes = tuple(i for i in sizes if cmp_ratio(best_w[i], vals[i], best_w[top], vals[top], tol) == 0)
    value = best_w[top] / vals[top] if is_exact(vals[top]) else float(best_w[top]) / float(vals[top])
    witness = min(best_s[i] for i in opt_sizes)
    return OracleReport(**report, f=f, fds_value=value, fds_sizes=opt_sizes, fds_witness=witness)


def check_edge_density_monotone(report: OracleReport) -> bool:
    """w(S_i*)/C(i,2) is non-increasing in i for 2 <= i <= n."""
    dens = [report.best_weight[i] / comb(i, 2) for i in range(2, report.n + 1)]
    return all(a >= b for a, b in zip(dens, dens[1:]))
