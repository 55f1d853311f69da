"""Exact Gaussian elimination over Q(zeta_L) (or any exact field).

Rows are lists of field elements supporting +, -, *, truthiness, and
division via 1/x.  Matrices here are tiny (a handful of modular forms
by a few dozen q-coefficients), so plain fraction-free-less elimination
is fine.
"""

from __future__ import annotations


def rref(rows: list[list]) -> tuple[list[int], list[list]]:
    """Reduced row echelon form with pivots at the earliest columns.

    Returns (pivot_columns, nonzero_rows); pivot entries are normalized
    to 1 and eliminated from every other row.  Zero rows are dropped.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return pivots, rows[:rank]


def eliminate(vec: list, pivots: list[int], rows: list[list]) -> tuple[list, list]:
    """Subtract the unique pivot combination of echelon rows from vec.

    Returns (residual, coefficients); residual is zero at every pivot
    column, and vec = residual + sum coefficients[i] * rows[i].
    """
    vec = list(vec)
    coeffs = []
    for col, row in zip(pivots, rows):
        c = vec[col]
        coeffs.append(c)
        if c:
            vec = [a - c * b for a, b in zip(vec, row)]
    return vec, coeffs
