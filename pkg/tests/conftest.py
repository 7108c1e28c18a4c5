import math
from fractions import Fraction

import pytest

from fdense import Graph, fig1_graph, linear, plateau, tabulate


@pytest.fixture
def fig1():
    return fig1_graph()


@pytest.fixture
def triangle():
    return Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def single_edge():
    return Graph.from_edges([("u", "v")])


def concave_family(n):
    """x, sqrt table, log(1+x) table, plateau."""
    return [linear(), tabulate(math.sqrt, n, "sqrt"), tabulate(math.log1p, n, "log1p"), plateau(n)]


def same_value(a, b, tol=1e-9):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tol * max(abs(float(a)), abs(float(b)), 1e-300)
