"""Exact Gaussian elimination over Q (lists of lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(m: Matrix) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def row_echelon(m: Matrix):
    """Return (reduced echelon copy, pivot columns, determinant sign*product)."""
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    scale = Fraction(1)
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            scale = -scale
        pv = a[r][c]
        scale *= pv
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots, scale


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(row_echelon(m)[1])


def det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    _, pivots, scale = row_echelon(m)
    return scale if len(pivots) == n else Fraction(0)


def null_space(m: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : m v = 0}."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots, _ = row_echelon(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def left_null_space(m: Matrix, nrows: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : v m = 0}."""
    if nrows is None:
        nrows = len(m)
    if not m or not m[0]:
        return null_space([], nrows)
    return null_space(transpose(m), nrows)


def same_span(a: list[list[Fraction]], b: list[list[Fraction]]) -> bool:
    """Whether two lists of vectors span the same subspace."""
    if not a and not b:
        return True
    if not a or not b:
        return rank(a or b) == 0
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(a + b)
