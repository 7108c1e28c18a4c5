"""LP relaxations LP_k, level-set rounding, the exact concave solver and dense frontier points.

LP_k:  maximize sum_e w(e) x_e
       subject to sum_v y_v = k,  x_e <= y_u,  x_e <= y_v,  0 <= x, y <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError
from .graph import Graph, induced_weight
from .numeric import as_rational
from .simplex import maximize
from .sizefn import SizeFunction, check_usable, frontier_affine
from .solution import Solution, better


@dataclass(frozen=True)
class LpInstance:
    graph: Graph
    k: int

    @property
    def num_vars(self) -> int:
        return self.graph.m + self.graph.n

    @property
    def num_rows(self) -> int:
        """Constraint rows apart from the 0 <= x, y <= 1 boxes."""
        return 2 * self.graph.m + 1

    def matrices(self):
        """(c, A_ub, b_ub, A_eq, b_eq) with variables ordered x_1..x_m, y_1..y_n.

        The objective is scaled by the graph's weight denominator so it stays integral.
        x_e <= 1 is implied by x_e <= y_u <= 1 and is not emitted.
        """
        g = self.graph
        m, n = g.m, g.n
        nv = m + n
        c = [int(w) for w in g.wnum] + [0] * n
        a_ub, b_ub = [], []
        for e in range(m):
            for end in (int(g.src[e]), int(g.dst[e])):
                row = [0] * nv
                row[e] = 1
                row[m + end] = -1
                a_ub.append(row)
                b_ub.append(0)
        for v in range(n):
            row = [0] * nv
            row[m + v] = 1
            a_ub.append(row)
            b_ub.append(1)
        a_eq = [[0] * m + [1] * n]
        return c, a_ub, b_ub, a_eq, [self.k]


@dataclass(frozen=True)
class LpSolution:
    k: int
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    objective: Fraction


def build_lp(g: Graph, k: int) -> LpInstance:
    if not 1 <= k <= g.n:
        raise ContractError(f"LP_k needs 1 <= k <= n, got k = {k}")
    return LpInstance(g, int(k))


def solve_lp(inst: LpInstance) -> LpSolution:
    """Exact optimum of LP_k; x_e is normalized to min(y_u, y_v)."""
    g = inst.graph
    c, a_ub, b_ub, a_eq, b_eq = inst.matrices()
    res = maximize(c, a_ub, b_ub, a_eq, b_eq)
    m = g.m
    y = res.x[m:]
    x = tuple(min(y[int(g.src[e])], y[int(g.dst[e])]) for e in range(m))
    objective = sum((g.weight(e) * x[e] for e in range(m)), Fraction(0))
    if objective != res.objective / g.wden:
        raise ContractError("LP solution is not tight on x_e = min(y_u, y_v)")
    return LpSolution(inst.k, x, tuple(y), objective)


def solve_all_lps(g: Graph) -> list[LpSolution]:
    """LP_1..LP_n; independent of f, so callers may reuse them across size functions."""
    return [solve_lp(build_lp(g, k)) for k in range(1, g.n + 1)]


def level_sets(y) -> list[tuple[int, ...]]:
    """Distinct sets {v : y_v >= r} for r over the values of y, plus V (r = 0)."""
    n = len(y)
    out = []
    for r in sorted(set(y), reverse=True):
        out.append(tuple(v for v in range(n) if y[v] >= r))
    if not out or len(out[-1]) < n:
        out.append(tuple(range(n)))
    return out


def sweep_levels(g: Graph, f: SizeFunction, y) -> Solution | None:
    """Best level set under w/f; sets with fewer than two vertices are skipped.

    Returns ``None`` when no level set has two or more vertices.
    """
    check_usable(f, g.n)
    best = None
    for s in level_sets(y):
        if len(s) < 2:
            continue
        cand = Solution.make(g, f, s, "lp")
        if better(best, cand):
            best = cand
    return best


def solve_concave_exact_lp(g: Graph, f: SizeFunction, lps: list[LpSolution] | None = None) -> Solution:
    """Exact f-DS optimum for concave f: sweep the level sets of every LP_k."""
    check_usable(f, g.n)
    if not f.shape(g.n).is_concave:
        raise ContractError(f"{f.name} is not concave on [0, {g.n}]")
    if lps is None:
        lps = solve_all_lps(g)
    best = None
    for sol in lps:
        cand = sweep_levels(g, f, sol.y)
        if cand is not None and better(best, cand):
            best = cand
    return best


@dataclass(frozen=True)
class FrontierPoint:
    size: int
    weight: Fraction
    witness: tuple[int, ...]


def upper_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Extreme points of the upper hull, left to right (monotone chain)."""
    hull: list[tuple[int, Fraction]] = []
    for p in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it turns strictly clockwise
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def dense_frontier(g: Graph, lps: list[LpSolution] | None = None) -> list[FrontierPoint]:
    """Dense frontier points with witnesses, from the level sets of LP_1..LP_n."""
    if lps is None:
        lps = solve_all_lps(g)
    best: dict[int, tuple[Fraction, tuple[int, ...]]] = {0: (Fraction(0), ())}
    for sol in lps:
        for s in level_sets(sol.y):
            w = induced_weight(g, s)
            cur = best.get(len(s))
            if cur is None or w > cur[0] or (w == cur[0] and s < cur[1]):
                best[len(s)] = (w, s)
    hull = upper_hull([(size, w) for size, (w, _) in best.items()])
    # only strictly positive slopes: a point reached with a flat or falling edge maximizes y - lam x for no lam > 0
    while len(hull) >= 2 and hull[-1][1] <= hull[-2][1]:
        hull.pop()
    return [FrontierPoint(size, w, best[size][1]) for size, w in hull]


def frontier_to_function(frontier: list[FrontierPoint], point: FrontierPoint | int, lam) -> SizeFunction:
    """Concave f whose f-DS optima all realize ``point``.

    ``lam`` must lie strictly between the slopes of the hull edges on either
    side of the point (the right-hand slope of the last point is 0).
    """
    idx = point if isinstance(point, int) else next(
        (i for i, p in enumerate(frontier) if (p.size, p.weight) == (point.size, point.weight)), None)
    if idx is None or not 0 <= idx < len(frontier):
        raise ContractError("point is not on the frontier")
    if idx == 0:
        raise ContractError("the empty set is not an f-DS solution")
    lam = as_rational(lam)
    p, prev = frontier[idx], frontier[idx - 1]
    left = (p.weight - prev.weight) / (p.size - prev.size)
    if idx + 1 < len(frontier):
        nxt = frontier[idx + 1]
        right = (nxt.weight - p.weight) / (nxt.size - p.size)
    else:
        right = Fraction(0)
    if not right < lam < left:
        raise ContractError(f"lambda {lam} is outside the open slope interval ({right}, {left})")
    return frontier_affine(p.size, p.weight, lam)
