from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdense import (ContractError, Graph, ParseError, from_json, gen_gnp, gen_planted, induced_weight,
                    parse_edge_list, to_edge_list, to_json, weighted_degree_in)
from fdense.graph import gen_random_edges


def test_parse_path():
    g = parse_edge_list("a b\nb c")
    assert (g.n, g.m) == (3, 2)
    assert all(w == 1 for _, _, w in g.edges)
    assert g.labels == ("a", "b", "c") or list(g.labels) == ["a", "b", "c"]


def test_parse_weights_and_comments():
    g = parse_edge_list("u v 2.5\n# note\nv x 1/3")
    assert (g.n, g.m) == (3, 2)
    assert sorted(w for _, _, w in g.edges) == [Fraction(1, 3), Fraction(5, 2)]


@pytest.mark.parametrize("text, line", [
    ("u u 1", 1),
    ("a b\na b", 2),
    ("a b\nb a", 2),
    ("a b 0", 1),
    ("a b -1", 1),
    ("a b c d", 1),
    ("a b x", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert f"line {line}" in str(exc.value)


def test_parse_empty():
    with pytest.raises(ParseError):
        parse_edge_list("# nothing\n")


def test_induced_weight(fig1):
    assert induced_weight(fig1, (0, 1, 2, 3)) == 6
    assert induced_weight(fig1, ()) == 0
    assert induced_weight(fig1, range(8)) == 11


def test_weighted_degree(fig1):
    v = fig1.ids(["4"])[0]
    assert weighted_degree_in(fig1, range(8), v) == 5
    assert weighted_degree_in(fig1, range(8), fig1.ids(["8"])[0]) == 1
    g = parse_edge_list("u v 2.5")
    assert weighted_degree_in(g, (0, 1), 0) == Fraction(5, 2)
    with pytest.raises(ContractError):
        weighted_degree_in(fig1, (0, 1), 5)


def test_fig1_vertex4_degree(fig1):
    # vertex 4 touches 1, 2, 3, 5 and 7
    v = fig1.ids(["4"])[0]
    assert fig1.degree(v) == 5


def test_gnp_complete_and_deterministic():
    k5 = gen_gnp(5, 1.0, 3)
    assert (k5.n, k5.m) == (5, 10)
    a, b = gen_gnp(9, 0.3, 7), gen_gnp(9, 0.3, 7)
    assert a.edges == b.edges


def test_planted_extreme():
    g = gen_planted(20, 5, 1.0, 0.0, 2)
    assert g.n == 20 and g.m == 10
    touched = {u for u, v, _ in g.edges} | {v for u, v, _ in g.edges}
    assert len(touched) == 5


@pytest.mark.parametrize("args", [(1, 0.5, 0), (5, 0.0, 0), (5, 1.5, 0)])
def test_gnp_ranges(args):
    with pytest.raises(ContractError):
        gen_gnp(*args)


def test_planted_ranges():
    with pytest.raises(ContractError):
        gen_planted(10, 3, 0.2, 0.5, 0)
    with pytest.raises(ContractError):
        gen_planted(10, 11, 0.9, 0.1, 0)


def test_graph_invariants():
    with pytest.raises(ContractError):
        Graph(2, [0], [0], [1])
    with pytest.raises(ContractError):
        Graph(2, [0], [1], [0])
    with pytest.raises(ContractError):
        Graph(3, [], [], [])
    g = gen_gnp(10, 0.4, 1)
    indptr, nbr, _ = g.adjacency
    assert indptr[-1] == len(nbr) == 2 * g.m
    assert g.total_weight == induced_weight(g, range(g.n))


def test_random_edges_simple():
    g = gen_random_edges(1000, 5000, 0)
    assert g.m == 5000
    key = np.minimum(g.src, g.dst) * g.n + np.maximum(g.src, g.dst)
    assert len(np.unique(key)) == 5000
    assert not np.any(g.src == g.dst)


def test_json_roundtrip_keeps_isolated():
    g = gen_planted(12, 4, 1.0, 0.0, 5)
    h = from_json(to_json(g))
    assert (h.n, h.m) == (g.n, g.m)
    assert sorted(w for *_, w in h.edges) == sorted(w for *_, w in g.edges)


weights = st.fractions(min_value=Fraction(1, 100), max_value=100)


@st.composite
def graphs(draw):
    n = draw(st.integers(2, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    return Graph.from_edges([(f"v{u}", f"v{v}", draw(weights)) for u, v in chosen])


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_roundtrip_edge_list(g):
    h = parse_edge_list(to_edge_list(g))
    assert (h.n, h.m) == (g.n, g.m)
    assert sorted(w for *_, w in h.edges) == sorted(w for *_, w in g.edges)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_handshake(g, data):
    s = data.draw(st.lists(st.integers(0, g.n - 1), unique=True))
    total = sum((weighted_degree_in(g, s, v) for v in s), Fraction(0))
    assert total == 2 * induced_weight(g, s)
