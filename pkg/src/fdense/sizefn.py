"""Size functions f with f(0) = 0: built-in families, shape checks, a_k coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import numpy as np

from .errors import ContractError, ParseError
from .numeric import DEFAULT_TOL, as_rational, is_exact


class SizeFunction:
    """Evaluation rule for f on non-negative integers plus a value cache.

    ``exact`` means every value is a :class:`Fraction`; otherwise values are
    floats. ``length`` bounds the domain of explicit tables.
    """

    def __init__(self, family: str, params: tuple, rule: Callable[[int], object],
                 exact: bool, length: int | None = None):
        self.family = family
        self.params = params
        self._rule = rule
        self.exact = exact
        self.length = length
        self._cache: list = []
        self._shapes: dict = {}

    def __call__(self, x: int):
        x = int(x)
        if x < 0:
            raise ContractError("size functions are defined on non-negative integers")
        if self.length is not None and x >= self.length:
            raise ContractError(f"{self.name} is tabulated only up to x={self.length - 1}")
        if x < len(self._cache):
            return self._cache[x]
        self.table(x)
        return self._cache[x]

    def table(self, n: int) -> tuple:
        """Values f(0), ..., f(n)."""
        if self.length is not None and n >= self.length:
            raise ContractError(f"{self.name} is tabulated only up to x={self.length - 1}")
        for x in range(len(self._cache), n + 1):
            self._cache.append(self._rule(x))
        return tuple(self._cache[: n + 1])

    def shape(self, n: int, tol: float = DEFAULT_TOL) -> "Shape":
        return classify(self, n, tol)

    @property
    def name(self) -> str:
        if not self.params:
            return self.family
        if self.length is not None:
            return self.family
        return f"{self.family}:" + ",".join(str(p) for p in self.params)

    def __repr__(self) -> str:
        return f"SizeFunction({self.name})"


@dataclass(frozen=True)
class Shape:
    n: int
    is_convex: bool
    is_concave: bool
    is_strictly_concave: bool
    is_monotone: bool
    monotone_violations: tuple[int, ...]
    convex_violations: tuple[int, ...]
    concave_violations: tuple[int, ...]


def _scaled(vals):
    """Exact tables as integer numerators over one denominator (sign-preserving), floats as float64."""
    if all(is_exact(v) for v in vals):
        fr = [Fraction(v) for v in vals]
        den = math.lcm(*(v.denominator for v in fr))
        nums = np.array([v.numerator * (den // v.denominator) for v in fr], dtype=object)
        if len(nums) and int(np.abs(nums).max()) < 2**60:
            nums = nums.astype(np.int64)
        return nums, True
    return np.array([float(v) for v in vals]), False


def classify(f: SizeFunction, n: int, tol: float = DEFAULT_TOL) -> Shape:
    """Shape flags of f on [0, n]; never raises, violations are listed instead.

    Differences are compared against ``-tol`` / ``+tol`` scaled by the
    magnitude of the values involved; exact tables compare exactly.
    """
    key = (n, tol)
    if key in f._shapes:
        return f._shapes[key]
    v, exact = _scaled(f.table(n))
    d1 = v[1:] - v[:-1]
    d2 = v[:-2] - 2 * v[1:-1] + v[2:]
    if exact:
        slack1 = slack2 = 0
    else:
        mag = np.maximum(np.abs(v), 1.0)
        slack1 = tol * np.maximum(mag[:-1], mag[1:])
        slack2 = tol * np.maximum(np.maximum(mag[:-2], mag[1:-1]), mag[2:])
    mono = np.flatnonzero(d1 < -slack1)
    convex_bad = np.flatnonzero(d2 < -slack2)
    concave_bad = np.flatnonzero(d2 > slack2)
    strict = bool(np.all(d2 < -slack2))
    shape = Shape(
        n=n,
        is_convex=not len(convex_bad),
        is_concave=not len(concave_bad),
        is_strictly_concave=not len(concave_bad) and strict,
        is_monotone=not len(mono),
        monotone_violations=tuple(int(x) for x in mono),
        convex_violations=tuple(int(x) for x in convex_bad),
        concave_violations=tuple(int(x) for x in concave_bad),
    )
    f._shapes[key] = shape
    return shape


def check_usable(f: SizeFunction, n: int) -> None:
    """Entry check shared by solvers: f(0) = 0, monotone, and f(2) > 0."""
    vals = f.table(n)
    if vals[0] != 0:
        raise ContractError(f"{f.name}: f(0) must be 0")
    shape = f.shape(n)
    if not shape.is_monotone:
        raise ContractError(f"{f.name} decreases at x={shape.monotone_violations[0]}")
    if n >= 2 and not vals[2] > 0:
        raise ContractError(f"{f.name}: f(2) must be positive")


def a_coefficients(f: SizeFunction, n: int, tol: float = DEFAULT_TOL) -> tuple:
    """Coefficients a_1..a_n with sum_i min(i, s) a_i = f(s) for 1 <= s <= n.

    Requires f concave on [0, n]; float round-off below ``tol`` is clamped
    so every coefficient is non-negative.
    """
    if n < 1:
        raise ContractError("a_coefficients needs n >= 1")
    shape = f.shape(n, tol)
    if not shape.is_concave:
        raise ContractError(f"{f.name} is not concave at x={shape.concave_violations[0]}")
    if not shape.is_monotone:
        raise ContractError(f"{f.name} decreases at x={shape.monotone_violations[0]}")
    vals = f.table(n)
    a = [2 * vals[k] - vals[k + 1] - vals[k - 1] for k in range(1, n)]
    a.append(vals[n] - vals[n - 1])
    if not f.exact:
        a = [max(float(x), 0.0) for x in a]
    return tuple(a)


# -- built-in families -----------------------------------------------------

def linear() -> SizeFunction:
    return SizeFunction("linear", (), Fraction, exact=True)


def power(alpha) -> SizeFunction:
    """f(x) = x**alpha for alpha in [1, 2]; exact for alpha in {1, 2}."""
    a = as_rational(alpha)
    if not 1 <= a <= 2:
        raise ContractError(f"power exponent must lie in [1, 2], got {alpha}")
    if a.denominator == 1:
        e = int(a)
        return SizeFunction("power", (a,), lambda x: Fraction(x) ** e, exact=True)
    af = float(a)
    return SizeFunction("power", (a,), lambda x: float(x) ** af if x else 0.0, exact=False)


def convex_combo(lam) -> SizeFunction:
    """f(x) = lam*x + (1-lam)*x**2 for lam in [0, 1)."""
    lam = as_rational(lam)
    if not 0 <= lam < 1:
        raise ContractError(f"convex_combo needs lambda in [0, 1), got {lam}")
    return SizeFunction("combo", (lam,), lambda x: lam * x + (1 - lam) * x * x, exact=True)


def ratio(lam) -> SizeFunction:
    """f(x) = x**2 / (lam*x + 1 - lam) for lam in [0, 1], with f(0) = 0."""
    lam = as_rational(lam)
    if not 0 <= lam <= 1:
        raise ContractError(f"ratio needs lambda in [0, 1], got {lam}")
    return SizeFunction("ratio", (lam,),
                        lambda x: Fraction(x * x) / (lam * x + 1 - lam) if x else Fraction(0),
                        exact=True)


def damks(k: int, total_weight, edge_weight) -> SizeFunction:
    """f(x) = max(x, (W / (w_e / 2)) (x - k) + k); f-DS optima are the best sets of size <= k."""
    k = int(k)
    W, we = as_rational(total_weight), as_rational(edge_weight)
    if k < 2:
        raise ContractError("damks needs k >= 2")
    if not (we > 0 and W >= we):
        raise ContractError("damks needs 0 < w_e <= W")
    slope = W / (we / 2)
    return SizeFunction("damks", (k, W, we), lambda x: max(Fraction(x), slope * (x - k) + k), exact=True)


def explicit(values: Sequence) -> SizeFunction:
    """Tabulated f; entries may be rationals/strings (exact) or floats."""
    vals = list(values)
    if not vals:
        raise ContractError("explicit table is empty")
    exact = all(isinstance(v, (Rational, str)) for v in vals)
    vals = [as_rational(v) for v in vals] if exact else [float(v) for v in vals]
    if vals[0] != 0:
        raise ContractError("explicit table must start with f(0) = 0")
    if any(v < 0 for v in vals):
        raise ContractError("explicit table has a negative value")
    frozen = tuple(vals)
    return SizeFunction("table", (frozen,), frozen.__getitem__, exact=exact, length=len(frozen))


def tabulate(fn: Callable[[int], float], n: int, name: str = "table") -> SizeFunction:
    """Explicit table of ``fn(0..n)`` evaluated in floating point."""
    f = explicit([float(fn(x)) for x in range(n + 1)])
    f.family = name
    return f


def plateau(n: int) -> SizeFunction:
    """Exact table 0, 1, 1, ..., 1 of length n + 1."""
    f = explicit([0] + [1] * n)
    f.family = "plateau"
    return f


def frontier_affine(k: int, weight_k, lam) -> SizeFunction:
    """f(x) = lam (x - k) + w_k for x > 0 and f(0) = 0."""
    k = int(k)
    wk, lam = as_rational(weight_k), as_rational(lam)
    if k < 1 or lam <= 0:
        raise ContractError("frontier_affine needs k >= 1 and lambda > 0")
    if wk - lam * k < 0:
        raise ContractError("frontier_affine would be negative near zero (not concave)")
    return SizeFunction("frontier", (k, wk, lam), lambda x: lam * (x - k) + wk if x else Fraction(0), exact=True)


def builtin(family: str, *params) -> SizeFunction:
    """Dispatch by family tag: linear, power, combo, ratio, damks, table, frontier."""
    makers = {
        "linear": linear, "power": power, "combo": convex_combo, "convex_combo": convex_combo,
        "ratio": ratio, "damks": damks, "table": explicit, "explicit": explicit,
        "frontier": frontier_affine, "frontier_affine": frontier_affine,
    }
    try:
        maker = makers[family]
    except KeyError:
        raise ContractError(f"unknown size-function family {family!r}") from None
    return maker(*params)


def parse_size_function(text: str, graph=None) -> SizeFunction:
    """Parse a CLI spelling such as ``power:1.5`` or ``table:0,1,1.8``.

    ``damks:k`` takes W = w(V) and w_e = weight of the first edge from ``graph``.
    Named float tables ``sqrt`` and ``log1p`` and the exact ``plateau`` table
    are tabulated up to ``graph.n``.
    """
    head, _, arg = text.strip().partition(":")
    head = head.lower()
    try:
        if head == "linear" and not arg:
            return linear()
        if head == "power":
            return power(Fraction(arg))
        if head in ("combo", "convex_combo"):
            return convex_combo(Fraction(arg))
        if head == "ratio":
            return ratio(Fraction(arg))
        if head == "table":
            return explicit([Fraction(t) for t in arg.split(",")])
        if head == "damks":
            if graph is None:
                raise ParseError("damks needs a graph for W and w_e")
            return damks(int(arg), graph.total_weight, graph.weight(0))
        if head in ("sqrt", "log1p") and not arg:
            if graph is None:
                raise ParseError(f"{head} needs a graph to size its table")
            fn = math.sqrt if head == "sqrt" else math.log1p
            return tabulate(fn, graph.n, head)
        if head == "plateau" and not arg:
            if graph is None:
                raise ParseError("plateau needs a graph to size its table")
            return plateau(graph.n)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, (ParseError, ContractError)):
            raise
        raise ParseError(f"bad size function {text!r}: {exc}") from None
    raise ParseError(f"unknown size function {text!r}")
