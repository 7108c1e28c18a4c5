"""Greedy peeling: repeatedly delete a minimum weighted-degree vertex."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .graph import Graph
from .numeric import DEFAULT_TOL, cmp_ratio
from .sizefn import SizeFunction, check_usable
from .solution import Solution


# float pre-filter margin; far wider than float round-off
_SHORTLIST = 1e-6


@njit(cache=True)
def _peel_kernel(n, indptr, nbr, ew, deg, order, removal):
    # Indexed binary min-heap keyed by (degree, vertex id); degrees only decrease.
    heap = np.arange(n)
    pos = np.arange(n)
    alive = np.ones(n, dtype=np.bool_)
    for start in range(n // 2 - 1, -1, -1):
        i = start
        while True:
            left = 2 * i + 1
            if left >= n:
                break
            c = left
            r = left + 1
            if r < n and (deg[heap[r]] < deg[heap[c]] or (deg[heap[r]] == deg[heap[c]] and heap[r] < heap[c])):
                c = r
            a, b = heap[i], heap[c]
            if deg[b] < deg[a] or (deg[b] == deg[a] and b < a):
                heap[i], heap[c] = b, a
                pos[b], pos[a] = i, c
                i = c
            else:
                break
    size = n
    for step in range(n):
        v = heap[0]
        order[step] = v
        removal[step] = deg[v]
        alive[v] = False
        size -= 1
        last = heap[size]
        heap[0] = last
        pos[last] = 0
        i = 0
        while True:
            left = 2 * i + 1
            if left >= size:
                break
            c = left
            r = left + 1
            if r < size and (deg[heap[r]] < deg[heap[c]] or (deg[heap[r]] == deg[heap[c]] and heap[r] < heap[c])):
                c = r
            a, b = heap[i], heap[c]
            if deg[b] < deg[a] or (deg[b] == deg[a] and b < a):
                heap[i], heap[c] = b, a
                pos[b], pos[a] = i, c
                i = c
            else:
                break
        for j in range(indptr[v], indptr[v + 1]):
            u = nbr[j]
            if not alive[u]:
                continue
            deg[u] -= ew[j]
            i = pos[u]
            while i > 0:
                p = (i - 1) // 2
                a, b = heap[p], heap[i]
                if deg[b] < deg[a] or (deg[b] == deg[a] and b < a):
                    heap[p], heap[i] = b, a
                    pos[b], pos[a] = p, i
                    i = p
                else:
                    break


@dataclass(frozen=True)
class PeelOrder:
    """Removal sequence v_n, ..., v_1 with exact per-step statistics.

    ``suffix_num[i]`` is w(S_i) * den where S_i is the set of the last ``i``
    vertices removed; ``removal_num[j]`` is the degree of the j-th removed
    vertex (times den) at removal time.
    """

    graph: Graph
    order: np.ndarray
    removal_num: np.ndarray
    suffix_num: np.ndarray
    den: int

    def suffix(self, i: int) -> tuple[int, ...]:
        n = len(self.order)
        return tuple(sorted(int(v) for v in self.order[n - i:]))

    def suffix_weight(self, i: int) -> Fraction:
        return Fraction(int(self.suffix_num[i]), self.den)

    def removal_degree(self, step: int) -> Fraction:
        return Fraction(int(self.removal_num[step]), self.den)


def peel(g: Graph) -> PeelOrder:
    """Greedy peeling in O(m log n); ties go to the smallest vertex id."""
    indptr, nbr, eid = g.adjacency
    ew = g.wnum[eid]
    deg = g.degree_num.copy()
    n = g.n
    order = np.empty(n, dtype=np.int64)
    removal = np.empty(n, dtype=deg.dtype)
    if deg.dtype == object:
        _peel_kernel.py_func(n, indptr, nbr, ew, deg, order, removal)
    else:
        _peel_kernel(n, indptr, nbr.astype(np.int64), ew, deg, order, removal)
    # suffix_num[i] = w(S_i); removing v_i from S_i drops removal degree.
    suffix = np.zeros(n + 1, dtype=removal.dtype)
    rev = removal[::-1]
    suffix[1:] = np.cumsum(rev)
    return PeelOrder(g, order, removal, suffix, g.wden)


def best_suffix(p: PeelOrder, f: SizeFunction, tol: float = DEFAULT_TOL) -> Solution:
    """Suffix S_i (i >= 2) maximizing w(S_i)/f(i); ties go to the smallest i.

    Float ratios shortlist the sizes near the maximum; the maximum and the
    tie among the shortlist are then settled by exact (or tolerance) comparison.
    """
    g = p.graph
    n = g.n
    check_usable(f, n)
    vals = f.table(n)
    fv = np.array([float(v) for v in vals[2:]])
    w = np.array([float(Fraction(int(x), p.den)) for x in p.suffix_num[2:]]) if p.suffix_num.dtype == object \
        else p.suffix_num[2:].astype(np.float64) / p.den
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(fv > 0, w / np.where(fv > 0, fv, 1.0), -np.inf)
    top = r.max()
    cands = [int(i) + 2 for i in np.flatnonzero(r >= top * (1 - _SHORTLIST))]
    best = cands[0]
    for i in cands[1:]:
        if cmp_ratio(p.suffix_weight(i), vals[i], p.suffix_weight(best), vals[best], tol) > 0:
            best = i
    best = next(i for i in cands
                if cmp_ratio(p.suffix_weight(i), vals[i], p.suffix_weight(best), vals[best], tol) == 0)
    return Solution.make(g, f, p.suffix(best), "peel", weight=p.suffix_weight(best))
