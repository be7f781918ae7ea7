"""Gaussian elimination over the Scalar field.

Pivots are chosen as the first entry that is not identically zero, preferring
constants, which keeps intermediate expressions small for the frames met in
practice (mostly diagonal or block-triangular Gram matrices).
"""
from __future__ import annotations


class SingularMatrixError(ArithmeticError):
    """The matrix is singular over the rational-function field."""


def _pivot(rows, col, start):
    best = None
    for r in range(start, len(rows)):
        entry = rows[r][col]
        if entry.is_zero():
            continue
        if entry.is_constant():
            return r
        if best is None:
            best = r
    return best


def _eliminate(a, rhs_cols):
    """Reduce ``[a | rhs]`` to reduced row echelon form in place.

    Returns the sign of the row permutation and the product of pivots.
    """
    n = len(a)
    sign = 1
    det = None
    for col in range(n):
        p = _pivot(a, col, col)
        if p is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        if p != col:
            a[p], a[col] = a[col], a[p]
            sign = -sign
        piv = a[col][col]
        det = piv if det is None else det * piv
        row = a[col]
        if not (piv.is_constant() and piv.constant_value() == 1):
            inv = 1 / piv
            row = [x * inv if not x.is_zero() else x for x in row]
            a[col] = row
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f.is_zero():
                continue
            a[r] = [x - f * y if not y.is_zero() else x for x, y in zip(a[r], row)]
    return sign, det


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` for a vector (list) or matrix (list of rows) rhs."""
    n = len(matrix)
    vector = rhs and not isinstance(rhs[0], (list, tuple))
    cols = [[b] for b in rhs] if vector else [list(b) for b in rhs]
    a = [list(matrix[i]) + cols[i] for i in range(n)]
    _eliminate(a, len(cols[0]))
    if vector:
        return [a[i][n] for i in range(n)]
    return [a[i][n:] for i in range(n)]


def inverse(matrix):
    n = len(matrix)
    chart = matrix[0][0].chart
    if is_diagonal(matrix):
        if any(matrix[i][i].is_zero() for i in range(n)):
            raise SingularMatrixError("matrix is singular")
        return [[1 / matrix[i][i] if i == j else chart.zero() for j in range(n)]
                for i in range(n)]
    ident = [[chart.one() if i == j else chart.zero() for j in range(n)] for i in range(n)]
    return solve(matrix, ident)


def det(matrix):
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    chart = matrix[0][0].chart
    a = [list(row) for row in matrix]
    try:
        sign, d = _eliminate(a, 0)
    except SingularMatrixError:
        return chart.zero()
    return d if sign == 1 else -d


def is_diagonal(matrix) -> bool:
    return all(matrix[i][j].is_zero()
               for i in range(len(matrix)) for j in range(len(matrix)) if i != j)


def matmul(a, b):
    chart = a[0][0].chart
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = chart.zero()
            for k, x in enumerate(row):
                if not x.is_zero() and not b[k][j].is_zero():
                    acc = acc + x * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def matvec(a, v):
    chart = a[0][0].chart
    out = []
    for row in a:
        acc = chart.zero()
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return out
