"""Exact rational linear programming: two-phase tableau simplex, Bland's rule."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .picard import as_rational


class MalformedProgram(ValueError):
    pass


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """Optimise ``c.x`` subject to ``A_eq x = b_eq`` and ``A_ub x <= b_ub``.

    ``nonneg`` is either one flag for all variables or one flag per variable;
    variables without the flag are free.
    """

    c: Sequence
    A_eq: Sequence[Sequence] = ()
    b_eq: Sequence = ()
    A_ub: Sequence[Sequence] = ()
    b_ub: Sequence = ()
    nonneg: bool | Sequence[bool] = True
    maximize: bool = False

    @property
    def nvars(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    # multipliers y on the equality rows of the minimisation form, with
    # c - A_eq^T y >= 0 on nonnegative columns at the optimum
    duals: tuple[Fraction, ...] | None = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.status is Status.OPTIMAL or self.status is Status.UNBOUNDED


def _validate(p: LinearProgram):
    n = p.nvars
    for name, A, b in (("A_eq", p.A_eq, p.b_eq), ("A_ub", p.A_ub, p.b_ub)):
        if len(A) != len(b):
            raise MalformedProgram(f"{name} has {len(A)} rows but its right-hand side has {len(b)}")
        for row in A:
            if len(row) != n:
                raise MalformedProgram(f"{name} row of length {len(row)}, expected {n}")
    if not isinstance(p.nonneg, bool) and len(p.nonneg) != n:
        raise MalformedProgram("nonneg flags do not match the variable count")


def lp_solve(p: LinearProgram) -> LPResult:
    _validate(p)
    n = p.nvars
    flags = [p.nonneg] * n if isinstance(p.nonneg, bool) else list(p.nonneg)
    sign = -1 if p.maximize else 1
    c = [sign * as_rational(v) for v in p.c]

    # standard-form columns: each user variable maps to +col and maybe -col
    cols: list[tuple[int, int]] = []
    for j in range(n):
        cols.append((j, 1))
        if not flags[j]:
            cols.append((j, -1))
    n_ub = len(p.A_ub)
    N = len(cols) + n_ub
    rows, rhs = [], []
    for A, b, slack in ((p.A_eq, p.b_eq, False), (p.A_ub, p.b_ub, True)):
        for r, (row, bi) in enumerate(zip(A, b)):
            vals = [as_rational(v) for v in row]
            out = [s * vals[j] for j, s in cols] + [Fraction(0)] * n_ub
            if slack:
                out[len(cols) + r] = Fraction(1)
            rows.append(out)
            rhs.append(as_rational(bi))
    cost = [s * c[j] for j, s in cols] + [Fraction(0)] * n_ub

    status, value, z, y = _simplex(rows, rhs, cost)
    if status is not Status.OPTIMAL:
        return LPResult(status)
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * z[k]
    return LPResult(Status.OPTIMAL, sign * value, tuple(x), tuple(y[: len(p.A_eq)]))


def _simplex(rows, rhs, cost):
    """Minimise ``cost.z`` s.t. ``rows z = rhs``, ``z >= 0``."""
    m = len(rows)
    N = len(cost)
    flip = []
    T = []
    for i in range(m):
        f = -1 if rhs[i] < 0 else 1
        flip.append(f)
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append([f * v for v in rows[i]] + art + [f * rhs[i]])
    width = N + m
    basis = [N + i for i in range(m)]

    def pivot(r, j):
        prow = T[r]
        pv = prow[j]
        if pv != 1:
            T[r] = prow = [v / pv for v in prow]
        nz = [k for k, v in enumerate(prow) if v != 0]
        for i in range(m):
            if i == r:
                continue
            row = T[i]
            f = row[j]
            if f != 0:
                for k in nz:
                    row[k] -= f * prow[k]
        basis[r] = j

    def run(costs, allowed):
        while True:
            # reduced costs, Bland: first improving column
            entering = None
            in_basis = set(basis)
            for j in range(width):
                if not allowed[j] or j in in_basis:
                    continue
                d = costs[j] - sum(costs[basis[i]] * T[i][j] for i in range(m) if T[i][j] != 0)
                if d < 0:
                    entering = j
                    break
            if entering is None:
                return True
            best = None
            for i in range(m):
                a = T[i][entering]
                if a > 0:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return False
            pivot(best[1], entering)

    phase1 = [Fraction(0)] * N + [Fraction(1)] * m
    run(phase1, [True] * width)
    if sum(T[i][-1] for i in range(m) if basis[i] >= N) > 0:
        return Status.INFEASIBLE, None, None, None
    # drive zero-level artificials out where possible
    for i in range(m):
        if basis[i] >= N:
            j = next((j for j in range(N) if T[i][j] != 0), None)
            if j is not None:
                pivot(i, j)
    costs = list(cost) + [Fraction(0)] * m
    allowed = [True] * N + [False] * m
    if not run(costs, allowed):
        return Status.UNBOUNDED, None, None, None
    z = [Fraction(0)] * N
    for i in range(m):
        if basis[i] < N:
            z[basis[i]] = T[i][-1]
    value = sum(cost[j] * z[j] for j in range(N))
    # y = c_B B^{-1}; column N+i of the tableau is B^{-1} e_i of the flipped system
    y = []
    for i in range(m):
        yi = sum(costs[basis[k]] * T[k][N + i] for k in range(m))
        y.append(flip[i] * yi)
    return Status.OPTIMAL, value, z, y
