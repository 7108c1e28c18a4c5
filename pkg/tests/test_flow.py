import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from fdense import (ContractError, Graph, build_network, enumerate_subsets, gen_gnp, linear, min_cut,
                    plateau, power, solve_unweighted_exact, solve_weighted_approx, tabulate, threshold_test)
from fdense.flow import A_1, A_2, A_S, A_T, iteration_count
from fdense.maxflow import max_flow


def _nx_value(N, tail, head, cap):
    G = nx.DiGraph()
    G.add_nodes_from(range(N))
    for u, v, c in zip(tail, head, cap):
        if G.has_edge(u, v):
            G[u][v]["capacity"] += c
        else:
            G.add_edge(u, v, capacity=c)
    return nx.maximum_flow_value(G, 0, 1)


@pytest.mark.parametrize("seed", range(25))
def test_maxflow_vs_networkx(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(3, 15))
    A = int(rng.integers(1, 4 * N))
    tail = rng.integers(0, N, A)
    head = rng.integers(0, N, A)
    ok = tail != head
    tail, head = tail[ok], head[ok]
    cap = rng.integers(0, 20, len(tail)).astype(np.int64)
    r = max_flow(N, 0, 1, tail, head, cap)
    assert r.value == _nx_value(N, tail, head, cap)
    # the reported side is a cut of that value
    side = r.source_side
    assert side[0] and not side[1]
    assert cap[side[tail] & ~side[head]].sum() == r.value
    rf = max_flow(N, 0, 1, tail, head, cap.astype(np.float64) / 7, eps=1e-12)
    assert rf.value == pytest.approx(r.value / 7, abs=1e-9)
    ro = max_flow(N, 0, 1, tail, head, np.array([Fraction(int(c), 3) for c in cap], dtype=object))
    assert ro.value == Fraction(int(r.value), 3)


def test_single_edge_capacities(single_edge):
    net = build_network(single_edge, linear(), Fraction(3, 5))
    caps = {(int(t), int(h)): net.capacity(i) for i, (t, h) in enumerate(zip(net.tail, net.head))}
    u, v = net.vertex_node(0), net.vertex_node(1)
    p1, p2 = net.p_node(1), net.p_node(2)
    assert caps[(0, u)] == caps[(0, v)] == Fraction(1, 2)
    assert caps[(u, v)] == caps[(v, u)] == Fraction(1, 2)
    assert caps[(u, p2)] == caps[(v, p2)] == Fraction(3, 5)
    assert caps[(u, p1)] == 0
    assert caps[(p2, 1)] == Fraction(6, 5) and caps[(p1, 1)] == 0


def test_single_edge_cuts(single_edge):
    cut = min_cut(build_network(single_edge, linear(), Fraction(3, 5)))
    assert cut.cost == 1 and cut.subset == ()
    cut = min_cut(build_network(single_edge, linear(), Fraction(2, 5)))
    assert cut.cost == Fraction(4, 5) and cut.subset == (0, 1)


def test_beta_zero(fig1):
    net = build_network(fig1, linear(), 0)
    assert all(net.cap[net.kind == A_T] == 0) and all(net.cap[net.kind == A_2] == 0)
    cut = min_cut(net)
    assert cut.cost == 0 and cut.subset == tuple(range(8))


def test_fig1_counts(fig1):
    net = build_network(fig1, tabulate(math.sqrt, 8), 1.0)
    assert net.num_nodes == 18
    assert [int((net.kind == k).sum()) for k in (A_S, A_T, A_1, A_2)] == [8, 8, 22, 64]


def test_rejects_convex(fig1):
    with pytest.raises(ContractError):
        build_network(fig1, power(2), 1)


def test_threshold_examples(triangle, fig1):
    assert threshold_test(triangle, linear(), 1) == (True, (0, 1, 2))
    assert threshold_test(triangle, linear(), Fraction(101, 100))[0] is False
    ok, w = threshold_test(fig1, tabulate(math.sqrt, 8), 3.8)
    assert ok and w == tuple(range(8))


@pytest.mark.parametrize("seed", range(8))
def test_threshold_monotone(seed):
    g = gen_gnp(9, 0.4, seed)
    f = tabulate(math.sqrt, 9)
    answers = [threshold_test(g, f, b)[0] for b in np.linspace(0.1, 4, 25)]
    assert answers == sorted(answers, reverse=True)


@pytest.mark.parametrize("seed", range(12))
def test_forced_cut_costs(seed):
    g = gen_gnp(8, 0.5, seed)
    f = tabulate(math.log1p, 8)
    beta = 0.3 + seed / 10
    net = build_network(g, f, beta)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        s = tuple(np.flatnonzero(rng.random(8) < 0.5))
        w = sum(1 for u, v, _ in g.edges if u in s and v in s)
        want = float(g.total_weight) + beta * float(f(len(s))) - w
        assert net.cut_cost(net.forced_cut(s)) == pytest.approx(want, rel=1e-9)


def test_unweighted_examples(fig1, single_edge):
    s = solve_unweighted_exact(fig1, linear())
    assert s.subset == (0, 1, 2, 3) and s.density == Fraction(3, 2)
    s = solve_unweighted_exact(fig1, tabulate(math.sqrt, 8))
    assert s.subset == tuple(range(8)) and s.density == pytest.approx(11 / math.sqrt(8), rel=1e-12)
    s = solve_unweighted_exact(single_edge, linear())
    assert s.subset == (0, 1) and s.density == Fraction(1, 2)


def test_unweighted_rejects_weights():
    g = Graph.from_edges([("a", "b", 2), ("b", "c", 1)])
    with pytest.raises(ContractError, match="weighted"):
        solve_unweighted_exact(g, linear())


@pytest.mark.parametrize("seed", range(30))
def test_unweighted_vs_oracle(seed):
    g = gen_gnp(4 + seed % 9, (0.2, 0.4, 0.7)[seed % 3], 1000 + seed)
    for f in (linear(), tabulate(math.sqrt, g.n), plateau(g.n)):
        got = solve_unweighted_exact(g, f).density
        want = enumerate_subsets(g, f).fds_value
        if f.exact:
            assert got == want
        else:
            assert got == pytest.approx(want, rel=1e-9)


def test_weighted_single_edge():
    g = Graph.from_edges([("u", "v", 5)])
    s = solve_weighted_approx(g, linear(), 0.1)
    assert s.subset == (0, 1) and iteration_count(s) == 0


def test_weighted_fig1(fig1):
    s = solve_weighted_approx(fig1, tabulate(math.sqrt, 8), 0.01)
    assert float(s.density) * 1.01 >= 11 / math.sqrt(8)


def _weighted(n, seed):
    rng = np.random.default_rng(seed)
    base = gen_gnp(n, 0.5, seed)
    w = [Fraction(int(x), 100) for x in rng.integers(1, 1001, base.m)]
    return Graph.from_fractions(n, base.src, base.dst, w)


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_weighted_guarantee(seed, eps):
    g = _weighted(5 + seed % 7, seed)
    f = tabulate(math.sqrt, g.n)
    s = solve_weighted_approx(g, f, eps)
    opt = enumerate_subsets(g, f).fds_value
    assert float(s.density) * (1 + eps) >= float(opt)
    bound = math.ceil(math.log2(math.log(g.m) / math.log(1 + eps))) + 1 if g.m > 1 else 1
    assert iteration_count(s) <= bound


def test_trace_has_final_probe(fig1):
    s = solve_weighted_approx(fig1, linear(), 0.1)
    assert s.trace[-1]["final"] and all("beta" in t for t in s.trace)
