"""Small exact linear algebra over Q and Z."""
from __future__ import annotations

from fractions import Fraction


def _echelon(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def solve_exact(matrix, rhs) -> list[Fraction]:
    """Solve ``matrix @ y = rhs`` for a consistent full-column-rank system."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    m, pivots = _echelon(aug)
    ncols = len(matrix[0])
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("system does not determine a unique solution")
    y = [Fraction(0)] * ncols
    for row, c in zip(m, pivots):
        y[c] = row[-1]
    return y


def hermite_basis(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix, zero rows dropped."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        # gcd-reduce column c among rows r.. until a single nonzero remains
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            for i in nz:
                if i != p:
                    q = m[i][c] // m[p][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[p])]
        nz = [i for i in range(r, len(m)) if m[i][c] != 0]
        if not nz:
            continue
        p = nz[0]
        m[r], m[p] = m[p], m[r]
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return m[:r]
