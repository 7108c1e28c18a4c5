"""Cut-based solvers for concave f.

For a threshold beta the network below has minimum cut value
``w(V) + min_S (beta * f(|S|) - w(S))``, so one max-flow decides whether some
vertex set reaches f-density beta::

    s -> v      d(v) / 2
    u <-> v     w(uv) / 2
    v -> p_k    beta * a_k
    p_k -> t    beta * k * a_k

Node ids: s = 0, t = 1, vertex v = 2 + v, p_k = n + 1 + k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractError
from .graph import Graph, induced_weight
from .maxflow import max_flow
from .numeric import DEFAULT_TOL, is_exact
from .sizefn import SizeFunction, a_coefficients, check_usable
from .solution import Solution

A_S, A_T, A_1, A_2 = 0, 1, 2, 3
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class FlowNetwork:
    graph: Graph
    beta: object
    a: tuple
    tail: np.ndarray
    head: np.ndarray
    cap: np.ndarray      # true capacity = cap / scale
    scale: int
    kind: np.ndarray

    @property
    def num_nodes(self) -> int:
        return 2 * self.graph.n + 2

    @property
    def exact(self) -> bool:
        return self.cap.dtype != np.float64

    def capacity(self, arc: int):
        c = self.cap[arc]
        return Fraction(int(c), self.scale) if self.exact else float(c)

    def vertex_node(self, v: int) -> int:
        return 2 + v

    def p_node(self, k: int) -> int:
        return self.graph.n + 1 + k

    def cut_cost(self, source_side: np.ndarray):
        crossing = source_side[self.tail] & ~source_side[self.head]
        total = self.cap[crossing].sum()
        return Fraction(int(total), self.scale) if self.exact else float(total)

    def forced_cut(self, subset) -> np.ndarray:
        """Source side {s} + S + {p_k : k < |S|}: the cut a given S induces."""
        n = self.graph.n
        side = np.zeros(self.num_nodes, dtype=bool)
        side[0] = True
        for v in subset:
            side[2 + v] = True
        side[n + 2: n + 2 + max(len(subset) - 1, 0)] = True
        return side


@dataclass(frozen=True)
class CutResult:
    source_side: np.ndarray
    cost: object
    subset: tuple[int, ...]


def build_network(g: Graph, f: SizeFunction, beta, *, exact: bool | None = None,
                  a: tuple | None = None) -> FlowNetwork:
    """Network for threshold ``beta``; exact (scaled integers) when f and beta are rational."""
    if beta < 0:
        raise ContractError("beta must be non-negative")
    n, m = g.n, g.m
    if a is None:
        check_usable(f, n)
        a = a_coefficients(f, n)
    if exact is None:
        exact = f.exact and is_exact(beta)
    vs = np.arange(n)
    ks = np.arange(1, n + 1)
    tail = np.concatenate([np.zeros(n, dtype=np.int64), n + 1 + ks, 2 + g.src, 2 + g.dst,
                           np.repeat(2 + vs, n)])
    head = np.concatenate([2 + vs, np.ones(n, dtype=np.int64), 2 + g.dst, 2 + g.src,
                           np.tile(n + 1 + ks, n)])
    kind = np.repeat(np.array([A_S, A_T, A_1, A_2], dtype=np.int8), [n, n, 2 * m, n * n])

    if exact:
        beta = Fraction(beta)
        pk = [beta * Fraction(x) for x in a]
        tk = [k * x for k, x in zip(range(1, n + 1), pk)]
        scale = math.lcm(2 * g.wden, *(x.denominator for x in pk), *(x.denominator for x in tk))
        half = scale // (2 * g.wden)
        pk_s = [int(x * scale) for x in pk]
        tk_s = [int(x * scale) for x in tk]
        bound = (int(g.degree_num.sum()) * half + int(g.wnum.sum()) * 2 * half
                 + sum(tk_s) + n * sum(pk_s))
        dtype = np.int64 if bound < _INT64_SAFE else object
        deg = np.asarray(g.degree_num, dtype=dtype) * half
        ew = np.asarray(g.wnum, dtype=dtype) * half
        cap = np.concatenate([deg, np.array(tk_s, dtype=dtype), ew, ew,
                              np.tile(np.array(pk_s, dtype=dtype), n)])
    else:
        beta = float(beta)
        af = np.array([float(x) for x in a])
        den = 2.0 * g.wden
        deg = np.asarray(g.degree_num, dtype=np.float64) / den
        ew = np.asarray(g.wnum, dtype=np.float64) / den
        cap = np.concatenate([deg, beta * ks * af, ew, ew, np.tile(beta * af, n)])
        scale = 1
    return FlowNetwork(g, beta, tuple(a), tail, head, cap, scale, kind)


def min_cut(net: FlowNetwork) -> CutResult:
    """Minimum s-t cut with the maximal source side; zero-capacity arcs are skipped."""
    m = net.graph.m
    is_fwd = net.kind == A_1
    is_fwd[np.flatnonzero(is_fwd)[m:]] = False   # the v->u half rides as residual partner
    keep = (net.kind != A_1) & (net.cap > 0)
    rev_cap = np.zeros_like(net.cap)
    idx_fwd = np.flatnonzero(is_fwd)
    rev_cap[idx_fwd] = net.cap[idx_fwd + m]
    keep |= is_fwd
    eps = 0
    if not net.exact:
        eps = 1e-12 * max(float(net.cap.max()), 1e-300)
    r = max_flow(net.num_nodes, 0, 1, net.tail[keep], net.head[keep], net.cap[keep], rev_cap[keep], eps=eps)
    side = r.source_side
    n = net.graph.n
    subset = tuple(int(v) for v in np.flatnonzero(side[2:n + 2]))
    return CutResult(side, net.cut_cost(side), subset)


def _dense_enough(g: Graph, f: SizeFunction, subset, beta, tol: float) -> bool:
    if len(subset) < 2:
        return False
    w, fv = induced_weight(g, subset), f(len(subset))
    if is_exact(beta) and is_exact(fv):
        return w >= beta * fv
    return float(w) >= float(beta) * float(fv) * (1 - tol)


def _probe(g: Graph, f: SizeFunction, beta, a, exact, tol):
    net = build_network(g, f, beta, a=a, exact=exact)
    cut = min_cut(net)
    ok = _dense_enough(g, f, cut.subset, beta, tol)
    return ok, cut


def threshold_test(g: Graph, f: SizeFunction, beta, tol: float = DEFAULT_TOL) -> tuple[bool, tuple[int, ...]]:
    """Does some S reach w(S)/f(|S|) >= beta?  Returns (answer, witness).

    The witness is the maximal minimum-cut source side restricted to V; the
    answer is yes exactly when that set is non-empty and its density,
    recomputed from the graph, reaches beta.
    """
    ok, cut = _probe(g, f, beta, None, None, tol)
    return ok, cut.subset if ok else ()


def _concave_prelude(g: Graph, f: SizeFunction) -> tuple:
    check_usable(f, g.n)
    return a_coefficients(f, g.n)


def _threshold_grid(g: Graph, f: SizeFunction, tol: float):
    """Sorted candidate densities p / f(q), p = 0..m, q = 2..n, as (p, q) pairs."""
    n, m = g.n, g.m
    vals = f.table(n)
    qs = np.arange(2, n + 1)
    fq = np.array([float(vals[q]) for q in qs])
    ps = np.arange(m + 1)
    grid = (ps[:, None] / fq[None, :]).ravel()
    pp = np.repeat(ps, len(qs))
    qq = np.tile(qs, m + 1)
    order = np.argsort(grid, kind="stable")
    grid, pp, qq = grid[order], pp[order], qq[order]
    if f.exact:
        return grid, pp, qq
    # near-equal float candidates collapse to one probe
    keep = np.concatenate([[True], np.diff(grid) > tol * np.maximum(grid[1:], 1e-300)])
    return grid[keep], pp[keep], qq[keep]


def solve_unweighted_exact(g: Graph, f: SizeFunction, tol: float = DEFAULT_TOL) -> Solution:
    """Exact optimum on unit-weight graphs by binary search over p / f(q).

    Finds the largest candidate threshold that is still achievable; its
    cut witness is optimal. Exact in rationals when f is rational-valued.
    """
    if not g.is_unweighted:
        raise ContractError("solve_unweighted_exact needs unit weights; use solve_weighted_approx")
    a = _concave_prelude(g, f)
    grid, pp, qq = _threshold_grid(g, f, tol)
    vals = f.table(g.n)

    def beta_at(i):
        return Fraction(int(pp[i])) / vals[int(qq[i])] if f.exact else float(grid[i])

    trace = []

    def probe(i):
        beta = beta_at(i)
        ok, cut = _probe(g, f, beta, a, f.exact, tol)
        trace.append({"beta": beta, "cost": cut.cost, "achievable": ok})
        return ok, cut.subset

    lo, hi = 0, len(grid) - 1
    ok, witness = probe(lo)
    if not ok:
        raise ContractError("threshold 0 is not achievable; the graph has no edges?")
    while lo < hi:
        mid = (lo + hi + 1) // 2
        ok, sub = probe(mid)
        if ok:
            lo, witness = mid, sub
        else:
            hi = mid - 1
    return Solution.make(g, f, witness, "flow-exact", trace=tuple(trace))


def heaviest_edge(g: Graph) -> tuple[int, int]:
    top = g.wnum.max()
    best = min((min(int(g.src[e]), int(g.dst[e])), max(int(g.src[e]), int(g.dst[e])))
               for e in np.flatnonzero(g.wnum == top))
    return best


def solve_weighted_approx(g: Graph, f: SizeFunction, epsilon: float, tol: float = DEFAULT_TOL) -> Solution:
    """(1 + epsilon)-approximation by geometric binary search on beta.

    Starts from [w(heaviest edge)/f(2), w(V)/f(2)] and halves the log-ratio of
    the bracket per max-flow until ub < (1 + epsilon) * lb.
    """
    if not epsilon > 0:
        raise ContractError("epsilon must be positive")
    a = _concave_prelude(g, f)
    f2 = float(f(2))
    edge = heaviest_edge(g)
    best = Solution.make(g, f, edge, "flow-approx")
    lb = float(best.weight) / f2
    ub = float(g.total_weight) / f2
    trace = []
    while ub >= (1 + epsilon) * lb:
        beta = math.sqrt(lb * ub)
        ok, cut = _probe(g, f, beta, a, False, tol)
        trace.append({"beta": beta, "cost": cut.cost, "achievable": ok, "lb": lb, "ub": ub})
        if ok:
            lb = beta
            best = Solution.make(g, f, cut.subset, "flow-approx")
        else:
            ub = beta
    ok, cut = _probe(g, f, lb, a, False, tol)
    trace.append({"beta": lb, "cost": cut.cost, "achievable": ok, "final": True})
    witness = cut.subset if ok else best.subset
    return Solution.make(g, f, witness, "flow-approx", trace=tuple(trace))


def iteration_count(sol: Solution) -> int:
    return sum(1 for t in sol.trace if not t.get("final"))
