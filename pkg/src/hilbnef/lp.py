"""Exact linear programming over the rationals.

Two-phase primal simplex on an integer-preserving tableau: every entry is
kept as an integer numerator over one shared positive denominator (the
determinant of the current basis), so pivots need only integer arithmetic
and a single exact division.  Bland's rule picks entering and leaving
variables, which rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

__all__ = ["LPResult", "solve", "feasible", "maximize"]

Number = int | Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    # for infeasible systems: y with y.A_j <= 0 for all columns and y.b > 0
    farkas: tuple[Fraction, ...] | None = None


def _integer_row(row: Sequence[Number], rhs: Number) -> tuple[list[int], int, int]:
    vals = [Fraction(v) for v in row] + [Fraction(rhs)]
    scale = lcm(*(v.denominator for v in vals))
    ints = [int(v * scale) for v in vals]
    return ints[:-1], ints[-1], scale


class _Tableau:
    """Rows ``T[0..m-1]`` are constraints, ``T[m]`` is the reduced-cost row.

    The true tableau is ``T / den``; the last column holds the right-hand side
    (and minus the objective value in the cost row).
    """

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.T = rows
        self.basis = basis
        self.den = 1

    @property
    def m(self) -> int:
        return len(self.basis)

    def pivot(self, r: int, k: int) -> None:
        T = self.T
        p = T[r][k]
        den = self.den
        pivot_row = T[r]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[k]
            if f == 0:
                T[i] = [(v * p) // den for v in row] if p != den else row
                continue
            T[i] = [(v * p - f * w) // den for v, w in zip(row, pivot_row)]
        self.den = p
        if p < 0:
            # keep the shared denominator positive
            self.T = [[-v for v in row] for row in self.T]
            self.den = -p
        self.basis[r] = k

    def entering(self, allowed: int) -> int | None:
        cost = self.T[self.m]
        for j in range(allowed):
            if cost[j] < 0:
                return j
        return None

    def leaving(self, k: int) -> int | None:
        best = None
        for i in range(self.m):
            a = self.T[i][k]
            if a <= 0:
                continue
            b = self.T[i][-1]
            if best is None:
                best = i
                continue
            bb, ba = self.T[best][-1], self.T[best][k]
            lhs, rhs = b * ba, bb * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best = i
        return best

    def run(self, allowed: int) -> str:
        while True:
            k = self.entering(allowed)
            if k is None:
                return "optimal"
            r = self.leaving(k)
            if r is None:
                return "unbounded"
            self.pivot(r, k)


def _phase_one(A: Sequence[Sequence[Number]], b: Sequence[Number]):
    m = len(A)
    n = len(A[0]) if m else 0
    rows, signs, scales = [], [], []
    for row, rhs in zip(A, b):
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        ints, r, scale = _integer_row(row, rhs)
        s = -1 if r < 0 else 1
        rows.append([s * v for v in ints] + [0] * m + [s * r])
        signs.append(s)
        scales.append(scale)
    for i in range(m):
        rows[i][n + i] = 1
    cost = [0] * (n + m + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[-1] -= row[-1]
    tab = _Tableau(rows + [cost], list(range(n, n + m)))
    tab.run(n + m)
    return tab, n, m, signs, scales


def solve(
    c: Sequence[Number], A: Sequence[Sequence[Number]], b: Sequence[Number]
) -> LPResult:
    """Minimise ``c.x`` subject to ``A x = b``, ``x >= 0`` exactly."""
    tab, n, m, signs, scales = _phase_one(A, b)
    T = tab.T
    if T[m][-1] != 0:
        # phase-one optimum is positive: read off the dual vector
        farkas = []
        for i in range(m):
            y = 1 - Fraction(T[m][n + i], tab.den)
            farkas.append(y * signs[i] * scales[i])
        return LPResult("infeasible", farkas=tuple(farkas))

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < tab.m:
        if tab.basis[i] >= n:
            k = next((j for j in range(n) if T[i][j] != 0), None)
            if k is None:
                del tab.T[i]
                del tab.basis[i]
                T = tab.T
                continue
            tab.pivot(i, k)
            T = tab.T
        i += 1

    m = tab.m
    cscale = lcm(*(Fraction(v).denominator for v in c)) if len(c) else 1
    cint = [int(Fraction(v) * cscale) for v in c]
    den = tab.den
    cost = [den * cint[j] for j in range(n)] + [0] * (len(T[0]) - n - 1) + [0]
    for i, bv in enumerate(tab.basis):
        cb = cint[bv]
        if cb:
            row = T[i]
            for j in range(n):
                cost[j] -= cb * row[j]
            cost[-1] -= cb * row[-1]
    tab.T[m] = cost
    status = tab.run(n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bv in enumerate(tab.basis):
        x[bv] = Fraction(tab.T[i][-1], tab.den)
    value = -Fraction(tab.T[m][-1], tab.den * cscale)
    return LPResult("optimal", value=value, x=tuple(x))


def feasible(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> LPResult:
    """Decide whether ``A x = b`` has a solution with ``x >= 0``."""
    n = len(A[0]) if A else 0
    return solve([0] * n, A, b)


def maximize(
    c: Sequence[Number], A: Sequence[Sequence[Number]], b: Sequence[Number]
) -> LPResult:
    res = solve([-Fraction(v) for v in c], A, b)
    if res.status != "optimal":
        return res
    return LPResult("optimal", value=-res.value, x=res.x)
