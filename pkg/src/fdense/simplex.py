"""Exact two-phase primal simplex with Bland's rule.

Each tableau row holds integers over one positive row denominator and is
reduced by its gcd after every update. A pivot touches only rows whose
pivot-column entry is non-zero. Rows live in int64 while no overflow is
possible and switch to Python ints otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ContractError


@dataclass(frozen=True)
class LPResult:
    x: tuple[Fraction, ...]
    objective: Fraction
    pivots: int


def _to_int_row(values: Sequence) -> tuple[list[int], int]:
    fr = [Fraction(v) for v in values]
    den = math.lcm(*(v.denominator for v in fr)) if fr else 1
    return [v.numerator * (den // v.denominator) for v in fr], den


_SAFE = 2**62


class _Tableau:
    """Integer tableau (right-hand side in the last column) with one positive denominator per row.

    Stored as int64 while a pivot provably cannot overflow, otherwise as
    Python ints (object dtype).
    """

    def __init__(self, rows: list[list[int]], dens: list[int], basis: list[int]):
        self.t = np.array(rows, dtype=object)
        self.dens = np.array(dens, dtype=object)
        self._shrink()
        self.basis = basis
        self.pivots = 0

    def _shrink(self) -> None:
        if self.t.dtype == object and (self.t.size == 0 or int(np.abs(self.t).max()) < 2**31) \
                and int(self.dens.max(initial=1)) < 2**31:
            self.t = self.t.astype(np.int64)
            self.dens = self.dens.astype(np.int64)

    @staticmethod
    def _reduce(block, dens):
        g = np.gcd(np.gcd.reduce(block, axis=1), dens)
        g[g == 0] = 1
        return block // g[:, None], dens // g

    def pivot(self, r: int, c: int, obj: list) -> None:
        t = self.t
        prow = t[r]
        if prow[c] < 0:
            prow = -prow
        piv = prow[c]
        rows = np.flatnonzero(t[:, c])
        rows = rows[rows != r]
        if t.dtype != object:
            ap, mp = abs(int(piv)), int(np.abs(prow).max())
            ob = obj[0]
            big = max(int(np.abs(ob).max()) * ap + abs(int(ob[c])) * mp, int(obj[1]) * ap)
            if len(rows):
                big = max(big, int(np.abs(t[rows]).max()) * ap + int(np.abs(t[rows, c]).max()) * mp,
                          int(self.dens[rows].max()) * ap)
            if big >= _SAFE:
                self.t = t = t.astype(object)
                self.dens = self.dens.astype(object)
                prow = prow.astype(object)
                piv = int(piv)
                obj[0] = obj[0].astype(object)
        if len(rows):
            block = t[rows] * piv - np.outer(t[rows, c], prow)
            t[rows], self.dens[rows] = self._reduce(block, self.dens[rows] * piv)
        if obj[0][c]:
            o = obj[0] * piv - obj[0][c] * prow
            o, d = self._reduce(o[None, :], np.array([obj[1] * piv], dtype=o.dtype))
            obj[0], obj[1] = o[0], d[0]
        pr, pd = self._reduce(prow[None, :], np.array([piv], dtype=prow.dtype))
        t[r], self.dens[r] = pr[0], pd[0]
        self.basis[r] = c
        self.pivots += 1

    def run(self, obj: list, allowed: int) -> None:
        """Maximize; ``obj`` = [reduced-cost row (rhs slot holds -value), den]."""
        while True:
            pos = np.flatnonzero(obj[0][:allowed] > 0)
            if not len(pos):
                return
            enter = int(pos[0])
            t = self.t
            cand = np.flatnonzero(t[:, enter] > 0)
            if not len(cand):
                raise ContractError("linear program is unbounded")
            leave, best = None, None
            for i in cand:
                q = Fraction(int(t[i, -1]), int(t[i, enter]))
                if best is None or q < best or (q == best and self.basis[i] < self.basis[leave]):
                    leave, best = int(i), q
            self.pivot(leave, enter, obj)

    def value(self, r: int) -> Fraction:
        return Fraction(int(self.t[r, -1]), int(self.dens[r]))

    def keep(self, rows) -> None:
        self.t = self.t[rows]
        self.dens = self.dens[rows]
        self.basis = [self.basis[r] for r in rows]


def _obj(acc, dtype):
    row, den = _to_int_row(acc)
    arr = np.array(row, dtype=object)
    if dtype != object and max(map(abs, row), default=0) < 2**31 and den < 2**31:
        arr = arr.astype(dtype)
    return [arr, den]


def maximize(c: Sequence, a_ub: Sequence[Sequence], b_ub: Sequence,
             a_eq: Sequence[Sequence] = (), b_eq: Sequence = ()) -> LPResult:
    """max c.x s.t. a_ub x <= b_ub, a_eq x = b_eq, x >= 0 (all right-hand sides >= 0)."""
    nv = len(c)
    n_ub, n_eq = len(a_ub), len(a_eq)
    if any(b < 0 for b in b_ub) or any(b < 0 for b in b_eq):
        raise ContractError("right-hand sides must be non-negative")
    ncol = nv + n_ub + n_eq
    rows, dens, basis = [], [], []
    for i, (coef, b) in enumerate(zip(a_ub, b_ub)):
        slack = [0] * (n_ub + n_eq)
        slack[i] = 1
        row, den = _to_int_row(list(coef) + slack + [b])
        rows.append(row)
        dens.append(den)
        basis.append(nv + i)
    for i, (coef, b) in enumerate(zip(a_eq, b_eq)):
        art = [0] * (n_ub + n_eq)
        art[n_ub + i] = 1
        row, den = _to_int_row(list(coef) + art + [b])
        rows.append(row)
        dens.append(den)
        basis.append(nv + n_ub + i)
    tab = _Tableau(rows, dens, basis)

    if n_eq:
        # phase 1: maximize -(sum of artificials); reduced costs are the summed equality rows
        acc = [Fraction(0)] * (ncol + 1)
        for r in range(n_ub, n_ub + n_eq):
            for j in list(range(nv + n_ub)) + [ncol]:
                if rows[r][j]:
                    acc[j] += Fraction(rows[r][j], dens[r])
        obj = _obj(acc, tab.t.dtype)
        tab.run(obj, nv + n_ub)
        if obj[0][-1] != 0:
            raise ContractError("linear program is infeasible")
        for r in range(len(tab.basis)):
            if tab.basis[r] >= nv + n_ub:
                nz = np.flatnonzero(tab.t[r, :nv + n_ub])
                if len(nz):
                    tab.pivot(r, int(nz[0]), [np.zeros(ncol + 1, dtype=tab.t.dtype), 1])
        tab.keep([r for r in range(len(tab.basis)) if tab.basis[r] < nv + n_ub])

    cost = [Fraction(v) for v in c] + [Fraction(0)] * (n_ub + n_eq)
    acc = cost + [Fraction(0)]
    for r, bv in enumerate(tab.basis):
        cb = cost[bv]
        if cb:
            den = int(tab.dens[r])
            for j in np.flatnonzero(tab.t[r]):
                acc[j] -= cb * Fraction(int(tab.t[r, j]), den)
    obj = _obj(acc, tab.t.dtype)
    tab.run(obj, nv + n_ub)
    x = [Fraction(0)] * nv
    for r, bv in enumerate(tab.basis):
        if bv < nv:
            x[bv] = tab.value(r)
    # the rhs slot of the reduced-cost row holds -objective
    return LPResult(tuple(x), -Fraction(int(obj[0][-1]), int(obj[1])), tab.pivots)
