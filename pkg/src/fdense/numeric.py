"""Tolerance handling and exact/inexact number helpers."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[Fraction, int, float]

DEFAULT_TOL = float(os.environ.get("FDS_TOL", "1e-9"))


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def as_rational(x) -> Fraction:
    """Convert a parameter to an exact rational.

    Floats are read through their shortest repr, so ``0.9`` becomes ``9/10``
    rather than the nearest binary fraction.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt(x) -> str:
    """Render a value for JSON/CSV: ``p/q`` for rationals, repr for floats."""
    if is_exact(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def close(a, b, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300)


def cmp_ratio(w1, f1, w2, f2, tol: float = DEFAULT_TOL) -> int:
    """Sign of ``w1/f1 - w2/f2`` for positive denominators.

    Exact when every argument is rational; otherwise the cross products are
    compared with relative tolerance ``tol`` and near-equal values tie.
    """
    if is_exact(w1) and is_exact(f1) and is_exact(w2) and is_exact(f2):
        lhs, rhs = w1 * f2, w2 * f1
        return (lhs > rhs) - (lhs < rhs)
    lhs, rhs = float(w1) * float(f2), float(w2) * float(f1)
    if abs(lhs - rhs) <= tol * max(abs(lhs), abs(rhs)):
        return 0
    return 1 if lhs > rhs else -1


def ratio(w, f):
    """``w/f`` kept exact when both operands are rational."""
    if is_exact(w) and is_exact(f):
        return Fraction(w) / Fraction(f)
    return float(w) / float(f)
