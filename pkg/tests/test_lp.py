import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from fdense import (ContractError, Graph, build_lp, dense_frontier, enumerate_subsets, frontier_affine,
                    frontier_to_function, gen_gnp, level_sets, linear, plateau, power, solve_concave_exact_lp,
                    solve_lp, solve_unweighted_exact, sweep_levels, tabulate)
from fdense.lp import solve_all_lps, upper_hull
from fdense.simplex import maximize


def test_simplex_small():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    r = maximize([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3])
    assert r.objective == 11 and r.x == (3, 1)


def test_simplex_equality_and_fractions():
    r = maximize([1, 1], [[2, 1]], [Fraction(7, 2)], [[1, -1]], [Fraction(1, 3)])
    # y = x - 1/3 and 3x - 1/3 <= 7/2
    assert r.objective == Fraction(20, 9)
    assert r.x[0] - r.x[1] == Fraction(1, 3)


def test_simplex_infeasible_and_unbounded():
    with pytest.raises(ContractError, match="infeasible"):
        maximize([1], [[1]], [1], [[1]], [2])
    with pytest.raises(ContractError, match="unbounded"):
        maximize([1, 0], [[-1, 1]], [1])


def test_simplex_huge_coefficients():
    big = 10**30
    r = maximize([big, 1], [[1, 1], [big, -1]], [big, big])
    # optimum at the intersection of both rows
    assert r.x[0] == Fraction(2 * big, big + 1)
    assert r.objective == big * r.x[0] + r.x[1]


@pytest.mark.parametrize("seed", range(20))
def test_simplex_vs_scipy(seed):
    rng = np.random.default_rng(seed)
    nv, nr = int(rng.integers(2, 7)), int(rng.integers(1, 7))
    A = rng.integers(-3, 6, (nr, nv))
    b = rng.integers(0, 10, nr)
    c = rng.integers(-2, 6, nv)
    bounds_rows = np.eye(nv, dtype=int)
    A = np.vstack([A, bounds_rows])
    b = np.concatenate([b, np.full(nv, 5)])
    r = maximize(c.tolist(), A.tolist(), b.tolist())
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * nv, method="highs")
    assert float(r.objective) == pytest.approx(-ref.fun, abs=1e-7)
    assert all(sum(Fraction(int(a)) * x for a, x in zip(row, r.x)) <= bb for row, bb in zip(A, b))


def test_lp_single_edge(single_edge):
    s = solve_lp(build_lp(single_edge, 2))
    assert s.objective == 1 and s.y == (1, 1)
    s = solve_lp(build_lp(single_edge, 1))
    assert s.objective == Fraction(1, 2) and s.y == (Fraction(1, 2), Fraction(1, 2))


def test_lp_triangle_k1(triangle):
    # y = (1/3, 1/3, 1/3) gives x_e = 1/3 on all three edges
    s = solve_lp(build_lp(triangle, 1))
    assert s.objective == 1
    ref = linprog(-np.r_[np.ones(3), np.zeros(3)],
                  A_ub=[[1, 0, 0, -1, 0, 0], [1, 0, 0, 0, -1, 0], [0, 1, 0, 0, -1, 0], [0, 1, 0, 0, 0, -1],
                        [0, 0, 1, -1, 0, 0], [0, 0, 1, 0, 0, -1]], b_ub=np.zeros(6),
                  A_eq=[[0, 0, 0, 1, 1, 1]], b_eq=[1], bounds=[(0, 1)] * 6)
    assert -ref.fun == pytest.approx(1)


def test_lp_k_range(triangle):
    with pytest.raises(ContractError):
        build_lp(triangle, 0)
    with pytest.raises(ContractError):
        build_lp(triangle, 4)


def test_lp_fig1_k4(fig1):
    assert solve_lp(build_lp(fig1, 4)).objective == 6


def test_lp_full(fig1):
    s = solve_lp(build_lp(fig1, 8))
    assert s.objective == 11 and all(y == 1 for y in s.y)


def test_lp_isolated_vertex():
    g = Graph(4, [0, 1], [1, 2], [1, 1])
    s = solve_lp(build_lp(g, 4))
    assert s.objective == 2


@pytest.mark.parametrize("seed", range(6))
def test_lp_upper_bounds_subsets(seed):
    g = gen_gnp(8, 0.5, seed)
    rep = enumerate_subsets(g)
    for sol in solve_all_lps(g):
        assert sol.objective >= rep.best_weight[sol.k]


def test_level_sets():
    assert level_sets((Fraction(1), Fraction(1, 2), Fraction(0))) == [(0,), (0, 1), (0, 1, 2)]
    assert level_sets((1, 1, 0)) == [(0, 1), (0, 1, 2)]


def test_sweep_tie():
    g = Graph.from_edges([("1", "2", 2), ("2", "3", 1)])
    s = sweep_levels(g, linear(), (1, 1, Fraction(1, 2)))
    assert s.subset == (0, 1) and s.density == 1


def test_sweep_integral(fig1):
    y = [1, 1, 1, 1, 0, 0, 0, 0]
    assert sweep_levels(fig1, linear(), y).subset == (0, 1, 2, 3)


def test_concave_lp_examples(fig1, triangle):
    s = solve_concave_exact_lp(fig1, linear())
    assert s.subset == (0, 1, 2, 3) and s.density == Fraction(3, 2)
    s = solve_concave_exact_lp(fig1, tabulate(math.sqrt, 8))
    assert s.subset == tuple(range(8))
    s = solve_concave_exact_lp(triangle, frontier_affine(3, 3, Fraction(9, 10)))
    assert s.subset == (0, 1, 2)
    with pytest.raises(ContractError):
        solve_concave_exact_lp(fig1, power(2))


def test_frontier_fig1(fig1):
    pts = dense_frontier(fig1)
    assert [(p.size, p.weight) for p in pts] == [(0, 0), (4, 6), (7, 10), (8, 11)]
    assert [p.witness for p in pts] == [(), (0, 1, 2, 3), tuple(range(7)), tuple(range(8))]


def test_frontier_small(single_edge):
    assert [(p.size, p.weight) for p in dense_frontier(single_edge)] == [(0, 0), (2, 1)]
    k4 = gen_gnp(4, 1.0, 0)
    assert [(p.size, p.weight) for p in dense_frontier(k4)] == [(0, 0), (4, 6)]


def test_frontier_to_function(fig1):
    pts = dense_frontier(fig1)
    f = frontier_to_function(pts, 1, Fraction(7, 5))
    s = solve_concave_exact_lp(fig1, f)
    assert (s.size, s.weight) == (4, 6)
    f = frontier_to_function(pts, pts[3], Fraction(1, 2))
    assert solve_concave_exact_lp(fig1, f).subset == tuple(range(8))
    with pytest.raises(ContractError):
        frontier_to_function(pts, 1, Fraction(3, 2))
    with pytest.raises(ContractError):
        frontier_to_function(pts, 0, Fraction(2))


def test_upper_hull_drops_collinear():
    assert upper_hull([(0, 0), (1, 1), (2, 2), (3, 2)]) == [(0, 0), (2, 2), (3, 2)]


@pytest.mark.parametrize("seed", range(15))
def test_frontier_vs_oracle(seed):
    g = gen_gnp(4 + seed % 8, (0.2, 0.4, 0.7)[seed % 3], 500 + seed)
    pts = dense_frontier(g)
    rep = enumerate_subsets(g)
    assert tuple((p.size, p.weight) for p in pts) == rep.frontier
    slopes = [(b.weight - a.weight) / (b.size - a.size) for a, b in zip(pts, pts[1:])]
    assert all(x > y for x, y in zip(slopes, slopes[1:]))
    for p in pts:
        assert rep.best_weight[p.size] == p.weight
        assert sum(1 for u, v, _ in g.edges if u in p.witness and v in p.witness) == p.weight


@pytest.mark.parametrize("seed", range(10))
def test_lp_vs_flow_and_strict_frontier(seed):
    g = gen_gnp(9, 0.4, 700 + seed)
    lps = solve_all_lps(g)
    pts = {(p.size, p.weight) for p in dense_frontier(g, lps)}
    for f in (linear(), tabulate(math.sqrt, 9), plateau(9)):
        a = solve_concave_exact_lp(g, f, lps)
        b = solve_unweighted_exact(g, f)
        assert float(a.density) == pytest.approx(float(b.density), rel=1e-9)
    s = solve_concave_exact_lp(g, tabulate(math.sqrt, 9), lps)
    assert (s.size, s.weight) in pts


@pytest.mark.parametrize("seed", range(4))
def test_frontier_large_weights(seed):
    rng = np.random.default_rng(seed)
    base = gen_gnp(7, 0.6, seed)
    w = [Fraction(int(x), int(d)) for x, d in zip(rng.integers(1, 2**40, base.m), rng.integers(1, 50, base.m))]
    g = Graph.from_fractions(7, base.src, base.dst, w)
    assert tuple((p.size, p.weight) for p in dense_frontier(g)) == enumerate_subsets(g).frontier
