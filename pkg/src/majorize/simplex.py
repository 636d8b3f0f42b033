"""Exact phase-one simplex over Fractions with Bland's rule.

Decides feasibility of ``A t = rhs, t >= 0``.  When infeasible it returns a
Farkas vector y with ``y·A_j <= 0`` for every column and ``y·rhs > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvariantError

ZERO = Fraction(0)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    solution: Optional[tuple[Fraction, ...]] = None  # t, when feasible
    farkas: Optional[tuple[Fraction, ...]] = None    # y, when infeasible
    pivots: int = 0


def phase_one(A: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
              max_pivots: int = 100_000) -> FeasibilityResult:
    m = len(A)
    ncols = len(A[0]) if m else 0
    signs = [1 if r >= 0 else -1 for r in rhs]
    # tableau columns: original vars, then one artificial per row, then rhs
    width = ncols + m
    T = []
    for i in range(m):
        s = signs[i]
        row = [Fraction(s * A[i][j]) for j in range(ncols)]
        row += [Fraction(1) if t == i else ZERO for t in range(m)]
        row.append(Fraction(s * rhs[i]))
        T.append(row)
    basis = [ncols + i for i in range(m)]
    # reduced costs for min Σ artificials: c_j - Σ_i T[i][j]
    cost = [Fraction(0)] * ncols + [Fraction(1)] * m + [ZERO]
    red = cost[:]
    for row in T:
        for j in range(width + 1):
            red[j] -= row[j]
    pivots = 0
    while True:
        entering = next((j for j in range(width) if red[j] < 0), None)
        if entering is None:
            break
        best, leave = None, None
        for i in range(m):
            piv = T[i][entering]
            if piv > 0:
                ratio = T[i][width] / piv
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise InvariantError("phase-one LP reported unbounded")
        _pivot(T, red, leave, entering)
        basis[leave] = entering
        pivots += 1
        if pivots > max_pivots:
            raise InvariantError("simplex pivot limit exceeded")

    objective = -red[width]
    if objective == 0:
        t = [ZERO] * ncols
        for i, bvar in enumerate(basis):
            if bvar < ncols:
                t[bvar] = T[i][width]
        return FeasibilityResult(True, solution=tuple(t), pivots=pivots)
    # dual of the flipped system: red[art_i] = 1 - y'_i
    y = tuple(signs[i] * (1 - red[ncols + i]) for i in range(m))
    return FeasibilityResult(False, farkas=y, pivots=pivots)


def _pivot(T: list, red: list, r: int, c: int) -> None:
    prow = T[r]
    pv = prow[c]
    if pv != 1:
        T[r] = prow = [x / pv for x in prow]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                T[i] = [x - f * p for x, p in zip(row, prow)]
    f = red[c]
    if f:
        red[:] = [x - f * p for x, p in zip(red, prow)]
