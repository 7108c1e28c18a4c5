"""Convex size functions: small-set brute force plus greedy peeling, with a guarantee.

The brute-force side is exact for optima of at most ``k`` vertices and loses
at most ``2 f(k)/k^2 / (f(s)/s^2)`` otherwise (s = |S*|). The peeling side
loses at most ``(2 f(n)/n) / (f(s) - f(s-1))``. The certificate takes the
worst case over s of the better of the two; the closed-form family
guarantee, when there is one, is reported as the ratio.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ContractError, GuardError
from .graph import Graph
from .numeric import DEFAULT_TOL, as_rational
from .peeling import best_suffix, peel
from .sizefn import SizeFunction, check_usable
from .solution import Certificate, Solution, pick_best

BRUTE_BUDGET = 10**8


def _heaviest_pair(g: Graph) -> tuple[tuple[int, int], Fraction]:
    top = g.wnum.max()
    pair = min((min(int(g.src[e]), int(g.dst[e])), max(int(g.src[e]), int(g.dst[e])))
               for e in np.flatnonzero(g.wnum == top))
    return pair, Fraction(int(top), g.wden)


def brute_force_prefix(g: Graph, k: int) -> list[tuple[int, tuple[int, ...], Fraction]]:
    """Maximum-weight set of each size i = 2..k; ties go to the lexicographically smallest set.

    Size 2 is the heaviest edge (O(m)); sizes >= 3 enumerate all subsets and
    are refused when n**k exceeds the enumeration budget.
    """
    n = g.n
    if not 2 <= k <= n:
        raise ContractError(f"brute force needs 2 <= k <= n, got k = {k}")
    if k >= 3 and n ** k > BRUTE_BUDGET:
        raise GuardError(f"n^k = {n}^{k} exceeds the enumeration budget {BRUTE_BUDGET}")
    pair, w2 = _heaviest_pair(g)
    out = [(2, pair, w2)]
    if k == 2:
        return out
    adj = [[0] * n for _ in range(n)]
    for e in range(g.m):
        u, v, w = int(g.src[e]), int(g.dst[e]), int(g.wnum[e])
        adj[u][v] = adj[v][u] = w
    for i in range(3, k + 1):
        best, best_set = -1, None
        # combinations come out in lexicographic order, so strict improvement keeps the smallest tie
        for s in combinations(range(n), i):
            w = sum(adj[a][b] for a, b in combinations(s, 2))
            if w > best:
                best, best_set = w, s
        out.append((i, best_set, Fraction(best, g.wden)))
    return out


def a_priori_bound(f: SizeFunction, n: int, k: int = 2) -> float:
    """max over s = 2..n of min(brute-force term, peeling term)."""
    vals = [float(v) for v in f.table(n)]
    fk = vals[k]
    worst = 1.0
    for s in range(2, n + 1):
        brute = 1.0 if s <= k else (2 * fk / k**2) / (vals[s] / s**2)
        step = vals[s] - vals[s - 1]
        peel_term = (2 * vals[n] / n) / step if step > 0 else math.inf
        worst = max(worst, min(brute, peel_term))
    return worst


def corollary_ratio(f: SizeFunction, n: int, k: int = 2) -> tuple[float | None, str]:
    """Closed-form guarantee for the power, combo and ratio families, else (None, "")."""
    if f.family == "power":
        a = float(f.params[0])
        return 2 * n ** ((a - 1) * (2 - a)), "2*n^((alpha-1)(2-alpha))"
    if f.family == "combo":
        lam = f.params[0]
        return float(2 + 2 * lam / ((1 - lam) * k)), "2+2*lambda/((1-lambda)*k)"
    if f.family == "ratio":
        lam = f.params[0]
        return float(4 / (1 + lam)), "4/(1+lambda)"
    return None, ""


def solve_convex(g: Graph, f: SizeFunction, k: int = 2, tol: float = DEFAULT_TOL) -> Solution:
    """Better of greedy peeling and brute force up to size k, with an approximation certificate."""
    n = g.n
    check_usable(f, n)
    if not f.shape(n, tol).is_convex:
        raise ContractError(f"{f.name} is not convex on [0, {n}]")
    cands = [best_suffix(peel(g), f)]
    cands += [Solution.make(g, f, s, "brute", weight=w) for _, s, w in brute_force_prefix(g, min(k, n))]
    best = pick_best(cands, tol)
    bound = a_priori_bound(f, n, min(k, n))
    cor, formula = corollary_ratio(f, n, k)
    cert = Certificate(
        ratio=bound if cor is None else cor,
        bound=bound,
        formula=formula or "max_s min{(2f(k)/k^2)/(f(s)/s^2), (2f(n)/n)/(f(s)-f(s-1))}",
        params={"k": k, "n": n, **({"param": f.params[0]} if cor is not None else {})},
        corollary=cor,
    )
    return dataclasses.replace(best, certificate=cert)


def epsilon_schedule_k(lam, eps) -> int:
    """Smallest brute-force size k giving ratio 2 + eps for the combo family."""
    lam, eps = as_rational(lam), as_rational(eps)
    if not 0 <= lam < 1:
        raise ContractError("epsilon schedule needs lambda in [0, 1)")
    if eps <= 0:
        raise ContractError("epsilon must be positive")
    return math.ceil(max(Fraction(2), 2 / eps * lam / (1 - lam)))
