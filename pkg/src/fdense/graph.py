"""Immutable edge-weighted undirected graphs with exact rational weights.

Weights are held as integer numerators over one common denominator, which
keeps every subset weight and degree exact while letting the heavy loops run
on numpy/numba integer arrays.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import ContractError, ParseError
from .numeric import fmt

_INT64_SAFE = 2**62


class Graph:
    """Edge-weighted undirected graph on dense vertex ids ``0..n-1``.

    Instances are immutable after construction and safe to share.
    """

    def __init__(self, n: int, src, dst, wnum, wden: int = 1,
                 labels: Sequence[str] | None = None, *, validate: bool = True):
        self.n = int(n)
        idtype = np.int32 if self.n < 2**31 else np.int64
        self.src = np.ascontiguousarray(src, dtype=idtype)
        self.dst = np.ascontiguousarray(dst, dtype=idtype)
        wnum = np.asarray(wnum)
        if wnum.dtype != object:
            wnum = wnum.astype(np.int64)
        self.wnum = wnum
        self.wden = int(wden)
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        self.labels = tuple(labels)
        for arr in (self.src, self.dst, self.wnum):
            arr.setflags(write=False)
        if validate:
            self._validate()

    def _validate(self) -> None:
        n, m = self.n, len(self.src)
        if len(self.dst) != m or len(self.wnum) != m:
            raise ContractError("edge arrays differ in length")
        if len(self.labels) != n:
            raise ContractError("label count does not match n")
        if m < 1:
            raise ContractError("graph must have at least one edge")
        if self.wden < 1:
            raise ContractError("weight denominator must be positive")
        if self.src.min() < 0 or self.dst.min() < 0 or max(self.src.max(), self.dst.max()) >= n:
            raise ContractError("vertex id out of range")
        loops = np.flatnonzero(self.src == self.dst)
        if len(loops):
            raise ContractError(f"self-loop at vertex {self.labels[self.src[loops[0]]]}")
        if any(w <= 0 for w in self.wnum) if self.wnum.dtype == object else (self.wnum <= 0).any():
            raise ContractError("edge weights must be positive")
        key = np.minimum(self.src, self.dst).astype(np.int64) * n + np.maximum(self.src, self.dst)
        if len(np.unique(key)) != m:
            raise ContractError("duplicate edge")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], labels: Sequence[Hashable] | None = None) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples over arbitrary labels.

        Dense ids follow ``labels`` when given (isolated vertices allowed),
        otherwise first appearance.
        """
        index: dict = {}
        names: list[str] = []
        if labels is not None:
            for lab in labels:
                if lab in index:
                    raise ContractError(f"duplicate label {lab!r}")
                index[lab] = len(names)
                names.append(str(lab))
        src, dst, ws = [], [], []
        for edge in edges:
            u, v = edge[0], edge[1]
            w = Fraction(edge[2]) if len(edge) > 2 else Fraction(1)
            ids = []
            for lab in (u, v):
                if lab not in index:
                    if labels is not None:
                        raise ContractError(f"unknown vertex {lab!r}")
                    index[lab] = len(names)
                    names.append(str(lab))
                ids.append(index[lab])
            src.append(ids[0])
            dst.append(ids[1])
            ws.append(w)
        return cls.from_fractions(len(names), src, dst, ws, names)

    @classmethod
    def from_fractions(cls, n: int, src, dst, weights: Sequence[Fraction],
                       labels: Sequence[str] | None = None) -> "Graph":
        weights = [Fraction(w) for w in weights]
        for w in weights:
            if w <= 0:
                raise ContractError(f"non-positive weight {w}")
        den = math.lcm(*(w.denominator for w in weights)) if weights else 1
        nums = [w.numerator * (den // w.denominator) for w in weights]
        if nums and max(nums) * len(nums) >= _INT64_SAFE:
            wnum = np.array(nums, dtype=object)
        else:
            wnum = np.array(nums, dtype=np.int64)
        return cls(n, np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), wnum, den, labels)

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.src)

    def weight(self, e: int) -> Fraction:
        return Fraction(int(self.wnum[e]), self.wden)

    @property
    def edges(self) -> list[tuple[int, int, Fraction]]:
        return [(int(u), int(v), self.weight(e)) for e, (u, v) in enumerate(zip(self.src, self.dst))]

    @cached_property
    def is_unweighted(self) -> bool:
        return bool((self.wnum == self.wden).all())

    @cached_property
    def total_weight(self) -> Fraction:
        return Fraction(int(self.wnum.sum()), self.wden)

    @cached_property
    def degree_num(self) -> np.ndarray:
        """Weighted degrees scaled by ``wden``."""
        dtype = object if self.wnum.dtype == object else np.int64
        deg = np.zeros(self.n, dtype=dtype)
        np.add.at(deg, self.src, self.wnum)
        np.add.at(deg, self.dst, self.wnum)
        return deg

    def degree(self, v: int) -> Fraction:
        return Fraction(int(self.degree_num[v]), self.wden)

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR incidence: ``(indptr, neighbor, edge_id)``; lengths sum to 2m."""
        n, m = self.n, self.m
        ends = np.concatenate([self.src, self.dst])
        others = np.concatenate([self.dst, self.src])
        eids = np.concatenate([np.arange(m), np.arange(m)])
        order = np.argsort(ends, kind="stable")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(ends, minlength=n), out=indptr[1:])
        return indptr, others[order], eids[order]

    def neighbors(self, v: int) -> list[tuple[int, Fraction]]:
        indptr, nbr, eid = self.adjacency
        return [(int(nbr[i]), self.weight(eid[i])) for i in range(indptr[v], indptr[v + 1])]

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(min(int(u), int(v)), max(int(u), int(v))): e
                for e, (u, v) in enumerate(zip(self.src, self.dst))}

    def vertex_set(self, members: Iterable[int]) -> tuple[int, ...]:
        """Normalize to a sorted duplicate-free tuple of valid ids."""
        s = tuple(sorted({int(v) for v in members}))
        if s and (s[0] < 0 or s[-1] >= self.n):
            raise ContractError("vertex id out of range")
        return s

    def ids(self, labels: Iterable) -> tuple[int, ...]:
        index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self.vertex_set(index[str(lab)] for lab in labels)
        except KeyError as exc:
            raise ContractError(f"unknown vertex label {exc.args[0]!r}") from None

    def mask(self, s: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(s)] = True
        return mask

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, w(V)={fmt(self.total_weight)})"


def induced_weight(g: Graph, s: Iterable[int]) -> Fraction:
    """Total weight of edges with both endpoints in ``s``."""
    mask = g.mask(s)
    inside = mask[g.src] & mask[g.dst]
    return Fraction(int(g.wnum[inside].sum()), g.wden)


def weighted_degree_in(g: Graph, s: Iterable[int], v: int) -> Fraction:
    """Weighted degree of ``v`` inside ``G[s]``; ``v`` must belong to ``s``."""
    mask = g.mask(s)
    if not mask[v]:
        raise ContractError(f"vertex {v} is not in the subset")
    indptr, nbr, eid = g.adjacency
    lo, hi = indptr[v], indptr[v + 1]
    sel = mask[nbr[lo:hi]]
    return Fraction(int(g.wnum[eid[lo:hi][sel]].sum()), g.wden)


# -- text formats ------------------------------------------------------------

def _parse_weight(token: str, lineno: int) -> Fraction:
    try:
        if "/" in token:
            p, q = token.split("/", 1)
            w = Fraction(int(p), int(q))
        else:
            w = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed weight {token!r}", lineno) from None
    if w <= 0:
        raise ParseError(f"non-positive weight {token!r}", lineno)
    return w


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v [w]`` lines; ``#`` starts a comment, ``w`` defaults to 1.

    Weights may be decimals or ``p/q`` fractions. Self-loops, duplicate
    edges, non-positive weights and malformed lines raise :class:`ParseError`.
    """
    index: dict[str, int] = {}
    src, dst, ws = [], [], []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v w', got {raw.strip()!r}", lineno)
        u, v = parts[0], parts[1]
        if u == v:
            raise ParseError(f"self-loop at {u!r}", lineno)
        w = _parse_weight(parts[2], lineno) if len(parts) == 3 else Fraction(1)
        for lab in (u, v):
            if lab not in index:
                index[lab] = len(index)
        a, b = index[u], index[v]
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v} (first at line {seen[key]})", lineno)
        seen[key] = lineno
        src.append(a)
        dst.append(b)
        ws.append(w)
    if not src:
        raise ParseError("no edges in input")
    return Graph.from_fractions(len(index), src, dst, ws, list(index))


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.labels[u]}\t{g.labels[v]}\t{fmt(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def to_json(g: Graph) -> str:
    return json.dumps({
        "n": g.n,
        "labels": list(g.labels),
        "edges": [[g.labels[u], g.labels[v], fmt(w)] for u, v, w in g.edges],
    })


def from_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
        n = int(doc["n"])
        edges = [(str(u), str(v), _parse_weight(str(w), i + 1)) for i, (u, v, w) in enumerate(doc["edges"])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed graph JSON: {exc}") from None
    labels = doc.get("labels")
    if labels is None:
        seen: dict[str, None] = {}
        for u, v, _ in edges:
            seen.setdefault(u)
            seen.setdefault(v)
        labels = list(seen)
        labels += [str(i) for i in range(n) if str(i) not in seen][: n - len(labels)]
    if len(labels) != n:
        raise ParseError(f"n={n} does not match {len(labels)} labels")
    try:
        return Graph.from_edges(edges, labels=[str(x) for x in labels])
    except ContractError as exc:
        raise ParseError(str(exc)) from None


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return from_json(text)
    return parse_edge_list(text)


# -- generators --------------------------------------------------------------

def _check_prob(p: float, name: str, allow_zero: bool = False) -> None:
    if not (0 <= p <= 1) or (p == 0 and not allow_zero):
        raise ContractError(f"{name} must lie in {'[0, 1]' if allow_zero else '(0, 1]'}, got {p}")


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p); redrawn from the same stream until it has an edge."""
    if n < 2:
        raise ContractError("gen_gnp needs n >= 2")
    _check_prob(p, "p")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    while True:
        keep = rng.random(len(iu)) < p
        if keep.any():
            return Graph(n, iu[keep], ju[keep], np.ones(int(keep.sum()), dtype=np.int64))


def gen_planted(n: int, k: int, p_in: float, p_out: float, seed: int) -> Graph:
    """G(n, p_out) with a random k-vertex block whose pairs appear with p_in."""
    if n < 2 or not 2 <= k <= n:
        raise ContractError("gen_planted needs n >= 2 and 2 <= k <= n")
    _check_prob(p_in, "p_in")
    _check_prob(p_out, "p_out", allow_zero=True)
    if not p_in > p_out:
        raise ContractError("p_in must exceed p_out")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    while True:
        block = np.zeros(n, dtype=bool)
        block[rng.permutation(n)[:k]] = True
        prob = np.where(block[iu] & block[ju], p_in, p_out)
        keep = rng.random(len(iu)) < prob
        if keep.any():
            return Graph(n, iu[keep], ju[keep], np.ones(int(keep.sum()), dtype=np.int64))


def gen_random_edges(n: int, m: int, seed: int, max_weight: int | None = None) -> Graph:
    """Uniform simple graph with exactly ``m`` edges, built without O(n^2) memory.

    With ``max_weight`` the weights are uniform integers in ``[1, max_weight]``.
    """
    if n < 2 or not 1 <= m <= n * (n - 1) // 2:
        raise ContractError("gen_random_edges needs n >= 2 and 1 <= m <= n(n-1)/2")
    rng = np.random.default_rng(seed)
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < m:
        need = int((m - len(keys)) * 1.1) + 16
        u = rng.integers(0, n, need, dtype=np.int64)
        v = rng.integers(0, n, need, dtype=np.int64)
        ok = u != v
        new = np.minimum(u[ok], v[ok]) * n + np.maximum(u[ok], v[ok])
        keys = np.unique(np.concatenate([keys, new]))
    keys = rng.permutation(keys)[:m]
    keys.sort()
    w = np.ones(m, dtype=np.int64) if max_weight is None else rng.integers(1, max_weight + 1, m, dtype=np.int64)
    return Graph(n, keys // n, keys % n, w, validate=False)


G_FIG1_TEXT = """\
1 2
1 3
1 4
2 3
2 4
3 4
4 5
5 6
6 7
7 4
7 8
"""


def fig1_graph() -> Graph:
    """The 8-vertex, 11-edge unit-weight example with frontier (0,0),(4,6),(7,10),(8,11)."""
    return parse_edge_list(G_FIG1_TEXT)
