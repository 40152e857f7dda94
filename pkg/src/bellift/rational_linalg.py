"""Exact linear algebra over the rationals (fraction-free, deterministic).

Rank uses Bareiss-style fraction-free elimination on integer rows, so vertex
matrices (entries +-1) never leave integer arithmetic and the result is an
exact rank over Q.  Pivots are chosen as the first nonzero entry in column
order, which makes the computation deterministic for a given row order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def integer_rank(rows: Sequence[Sequence[int]], stop_at: int | None = None) -> int:
    """Exact rank over Q of a matrix with integer entries.

    ``stop_at`` allows early exit once the rank reaches a target (the true
    rank is then at least the returned value; callers use it with the ambient
    dimension, where equality is what matters).
    """
    m = [[int(x) for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    limit = min(nrows, ncols) if stop_at is None else min(stop_at, nrows, ncols)
    rank = 0
    prev_pivot = 1
    for col in range(ncols):
        if rank >= limit:
            break
        pivot_row = None
        for i in range(rank, nrows):
            if m[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        # Bareiss update: exact integer division keeps entries minor-sized.
        for i in range(rank + 1, nrows):
            f = m[i][col]
            row_i, row_r = m[i], m[rank]
            for k in range(col + 1, ncols):
                row_i[k] = (pivot * row_i[k] - f * row_r[k]) // prev_pivot
            row_i[col] = 0
        prev_pivot = pivot
        rank += 1
    return rank


def solve_unit_rhs(matrix: Sequence[Sequence[int]]) -> list[Fraction] | None:
    """Solve ``M x = (1, ..., 1)`` exactly, or return None if M is singular.

    M must be square with integer entries.  Plain Gaussian elimination over
    Fractions; the first nonzero entry in column order is the pivot.
    """
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(1)] for row in matrix]
    if any(len(row) != n + 1 for row in aug):
        raise ValueError("matrix must be square")
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if aug[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        for i in range(col + 1, n):
            f = aug[i][col]
            if not f:
                continue
            ratio = f / pivot
            row_i, row_c = aug[i], aug[col]
            for k in range(col, n + 1):
                row_i[k] -= ratio * row_c[k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n]
        row = aug[i]
        for k in range(i + 1, n):
            acc -= row[k] * x[k]
        x[i] = acc / row[i]
    return x
