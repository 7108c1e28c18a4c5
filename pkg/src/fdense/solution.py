"""Solver results and candidate selection under the global tie rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .errors import ContractError
from .graph import Graph, induced_weight
from .numeric import DEFAULT_TOL, close, cmp_ratio, fmt, ratio
from .sizefn import SizeFunction


@dataclass(frozen=True)
class Certificate:
    """A-priori approximation guarantee attached to a convex-case solution."""

    ratio: float
    bound: float
    formula: str
    params: dict = field(default_factory=dict)
    corollary: float | None = None

    def to_dict(self) -> dict:
        return {"ratio": self.ratio, "bound": self.bound, "formula": self.formula,
                "corollary": self.corollary, "params": {k: fmt(v) if not isinstance(v, (int, str)) else v
                                                        for k, v in self.params.items()}}


@dataclass(frozen=True)
class Solution:
    subset: tuple[int, ...]
    weight: Fraction
    f_value: Any
    density: Any
    solver: str
    certificate: Certificate | None = None
    trace: tuple = ()

    @classmethod
    def make(cls, g: Graph, f: SizeFunction, subset: Iterable[int], solver: str,
             weight: Fraction | None = None, **extra) -> "Solution":
        s = g.vertex_set(subset)
        if len(s) < 2:
            raise ContractError("a solution needs at least two vertices")
        w = induced_weight(g, s) if weight is None else weight
        fv = f(len(s))
        return cls(s, w, fv, ratio(w, fv), solver, **extra)

    @property
    def size(self) -> int:
        return len(self.subset)

    def labels(self, g: Graph) -> list[str]:
        return [g.labels[v] for v in self.subset]

    def validate(self, g: Graph, f: SizeFunction, tol: float = DEFAULT_TOL) -> None:
        """Recompute w(S) and f(|S|) from the inputs; raise on any mismatch."""
        w = induced_weight(g, self.subset)
        fv = f(len(self.subset))
        if w != self.weight or not close(fv, self.f_value, tol) or not close(ratio(w, fv), self.density, tol):
            raise ContractError(f"solution from {self.solver} does not re-validate")

    def to_dict(self, g: Graph) -> dict:
        return {
            "subset": self.labels(g),
            "size": self.size,
            "weight": fmt(self.weight),
            "f_value": fmt(self.f_value),
            "density": fmt(self.density),
            "solver": self.solver,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def better(a: Solution | None, b: Solution, tol: float = DEFAULT_TOL) -> bool:
    """True when ``b`` beats ``a``: higher density, or a tie and lexicographically smaller set."""
    if a is None:
        return True
    c = cmp_ratio(b.weight, b.f_value, a.weight, a.f_value, tol)
    return c > 0 or (c == 0 and b.subset < a.subset)


def pick_best(candidates: Iterable[Solution], tol: float = DEFAULT_TOL) -> Solution | None:
    best = None
    for cand in candidates:
        if better(best, cand, tol):
            best = cand
    return best
