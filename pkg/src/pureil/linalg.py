"""Exact dense linear algebra on small rational matrices.

Fraction-free (Bareiss) elimination with a deterministic pivot rule: the
first row with a nonzero entry in the pivot column.  All divisions are exact,
so results are exact rationals with no growth surprises.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import PureILError

Matrix = list[list[Fraction]]


def _copy(matrix) -> Matrix:
    return [[Fraction(v) for v in row] for row in matrix]


def _eliminate(m: Matrix) -> tuple[int, bool]:
    """In-place fraction-free forward elimination.

    Returns (swap sign, completed) where `completed` is False as soon as a
    pivot column has no usable entry, i.e. the square part is singular.
    Operates on the full row width, so `m` may carry augmented columns.
    """
    rows = len(m)
    cols = len(m[0])
    sign = 1
    prev = Fraction(1)
    for k in range(min(rows, cols)):
        pivot_row = next((i for i in range(k, rows) if m[i][k] != 0), None)
        if pivot_row is None:
            return sign, False
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign, True


def exact_det(matrix) -> Fraction:
    m = _copy(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise PureILError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    sign, completed = _eliminate(m)
    if not completed:
        return Fraction(0)
    return sign * m[n - 1][n - 1]


def exact_solve(matrix, rhs) -> list[Fraction]:
    """Solve matrix @ x = rhs exactly; raises on a singular matrix."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise PureILError("solve needs a square system")
    m = _copy(matrix)
    for row, b in zip(m, rhs):
        row.append(Fraction(b))
    _, completed = _eliminate(m)
    if not completed:
        raise PureILError("singular system")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n] - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / m[i][i]
    return x


def exact_inverse_row(matrix, index: int) -> list[Fraction]:
    """Row `index` (0-based) of the inverse: solves x @ matrix = e_index."""
    n = len(matrix)
    transposed = [[matrix[j][i] for j in range(n)] for i in range(n)]
    unit = [Fraction(int(j == index)) for j in range(n)]
    return exact_solve(transposed, unit)


def permutation_expansion_det(matrix) -> Fraction:
    """Independent determinant by signed permutation expansion (tiny n only)."""
    n = len(matrix)
    if n > 8:
        raise PureILError("permutation expansion is for small matrices")
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += term
    return total
