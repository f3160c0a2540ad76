"""Exact rational linear programming.

A small two-phase primal simplex over `fractions.Fraction`.  Free variables
are split into positive and negative parts; pivoting follows Bland's rule
(lowest eligible index), which is deterministic and cycle-free.  Problem
sizes here are tiny (desk scale), so clarity wins over speed.

Constraints are given as pairs (coeffs, rhs):

- ge:     coeffs . x >= rhs
- eq:     coeffs . x == rhs
- strict: coeffs . x >  rhs   (feasibility only, via an epsilon variable)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Constraint = tuple[Sequence[Fraction], Fraction]

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None
    point: tuple[Fraction, ...] | None


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], basis: list[int],
           r: int, c: int) -> None:
    pr = rows[r]
    inv = Fraction(1) / pr[c]
    rows[r] = pr = [x * inv for x in pr]
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            f = row[c]
            rows[i] = [x - f * y for x, y in zip(row, pr)]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [x - f * y for x, y in zip(cost, pr)]
    basis[r] = c


def _iterate(rows: list[list[Fraction]], cost: list[Fraction], basis: list[int],
             allowed: Sequence[bool]) -> str:
    ncols = len(cost) - 1
    while True:
        enter = -1
        for j in range(ncols):
            if allowed[j] and cost[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best: Fraction | None = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(rows, cost, basis, leave, enter)


def minimize(objective: Sequence[Fraction],
             ge: Sequence[Constraint] = (),
             eq: Sequence[Constraint] = ()) -> LPResult:
    """Minimize objective . x over {x free : ge and eq constraints}."""
    n = len(objective)
    # constraints with no variables degenerate to sign checks on the rhs
    if n == 0:
        ok = all(Fraction(b) <= 0 for _, b in ge) and all(Fraction(b) == 0 for _, b in eq)
        return LPResult(OPTIMAL, Fraction(0), ()) if ok else LPResult(INFEASIBLE, None, None)

    # columns: x+ (n), x- (n), slacks (len(ge)); rows: ge then eq
    nslack = len(ge)
    ncols = 2 * n + nslack
    rows: list[list[Fraction]] = []
    for idx, (coeffs, rhs) in enumerate(list(ge) + list(eq)):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != n:
            raise ValueError("constraint arity mismatch")
        row = coeffs + [-c for c in coeffs] + [Fraction(0)] * nslack
        if idx < nslack:
            row[2 * n + idx] = Fraction(-1)  # a.x - s = b, s >= 0
        row.append(Fraction(rhs))
        if row[-1] < 0:
            row = [-x for x in row]
        rows.append(row)

    m = len(rows)
    basis = list(range(ncols, ncols + m))  # artificials
    for i, row in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows[i] = row[:-1] + art + [row[-1]]
    total_cols = ncols + m

    # phase 1: minimize the sum of artificials
    cost = [Fraction(0)] * (total_cols + 1)
    for row in rows:
        for j in range(total_cols + 1):
            cost[j] -= row[j]
    for j in range(ncols, total_cols):
        cost[j] = Fraction(0)
    allowed = [True] * total_cols
    _iterate(rows, cost, basis, allowed)
    if -cost[-1] != 0:
        return LPResult(INFEASIBLE, None, None)

    # drive artificials out of the basis; drop rows that became redundant
    keep: list[int] = []
    for i in range(m):
        if basis[i] >= ncols:
            piv = -1
            for j in range(ncols):
                if rows[i][j] != 0:
                    piv = j
                    break
            if piv >= 0:
                _pivot(rows, cost, basis, i, piv)
                keep.append(i)
            # else: redundant row, dropped below
        else:
            keep.append(i)
    rows = [rows[i][:ncols] + [rows[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2: the real objective
    obj = [Fraction(c) for c in objective]
    full = obj + [-c for c in obj] + [Fraction(0)] * nslack
    cost = full + [Fraction(0)]
    for i, b in enumerate(basis):
        if cost[b] != 0:
            f = cost[b]
            cost = [x - f * y for x, y in zip(cost, rows[i])]
    allowed = [True] * ncols
    status = _iterate(rows, cost, basis, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)
    values = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        values[b] = rows[i][-1]
    point = tuple(values[i] - values[n + i] for i in range(n))
    return LPResult(OPTIMAL, -cost[-1], point)


def maximize(objective: Sequence[Fraction],
             ge: Sequence[Constraint] = (),
             eq: Sequence[Constraint] = ()) -> LPResult:
    res = minimize([-Fraction(c) for c in objective], ge, eq)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.value, res.point)


def feasible_point(ge: Sequence[Constraint] = (),
                   eq: Sequence[Constraint] = (),
                   strict: Sequence[Constraint] = ()) -> tuple[Fraction, ...] | None:
    """A rational point satisfying all constraints, or None.

    Strict constraints are handled exactly: maximize epsilon subject to
    coeffs . x - epsilon >= rhs and epsilon <= 1; the system is strictly
    feasible iff the optimum is positive.
    """
    strict = list(strict)
    if not strict:
        n = len(ge[0][0]) if ge else (len(eq[0][0]) if eq else 0)
        res = minimize([Fraction(0)] * n, ge, eq)
        return res.point if res.status == OPTIMAL else None
    n = len(strict[0][0])
    ge_aug: list[Constraint] = []
    for coeffs, rhs in ge:
        ge_aug.append((list(coeffs) + [Fraction(0)], Fraction(rhs)))
    for coeffs, rhs in strict:
        ge_aug.append((list(coeffs) + [Fraction(-1)], Fraction(rhs)))
    ge_aug.append(([Fraction(0)] * n + [Fraction(-1)], Fraction(-1)))  # eps <= 1
    eq_aug = [(list(coeffs) + [Fraction(0)], Fraction(rhs)) for coeffs, rhs in eq]
    objective = [Fraction(0)] * n + [Fraction(1)]
    res = maximize(objective, ge_aug, eq_aug)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.point[:n]
