"""Densest subgraphs under a size function f: maximize w(S) / f(|S|)."""

from .convex import brute_force_prefix, epsilon_schedule_k, solve_convex
from .errors import ContractError, FdsError, GuardError, ParseError
from .flow import build_network, min_cut, solve_unweighted_exact, solve_weighted_approx, threshold_test
from .graph import (Graph, fig1_graph, from_json, gen_gnp, gen_planted, gen_random_edges, induced_weight,
                    load_graph, parse_edge_list, to_edge_list, to_json, weighted_degree_in)
from .lp import (build_lp, dense_frontier, frontier_to_function, level_sets, solve_all_lps,
                 solve_concave_exact_lp, solve_lp, sweep_levels)
from .oracle import enumerate_subsets
from .peeling import best_suffix, peel
from .sizefn import (SizeFunction, a_coefficients, builtin, classify, convex_combo, damks, explicit,
                     frontier_affine, linear, parse_size_function, plateau, power, ratio, tabulate)
from .solution import Certificate, Solution

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
