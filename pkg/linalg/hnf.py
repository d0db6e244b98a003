"""Column-style Hermite normal form over Z, with the unimodular transform.

H = A*U where U is unimodular. Rows are scanned top to bottom; each row
that still has a nonzero entry right of the current pivot column gets a
positive pivot, and the entries left of that pivot are reduced into
[0, pivot). The pivot pattern makes H lower trapezoidal, which is what
`solve` uses for forward substitution.
"""

from typing import List, Optional, Sequence, Tuple

from sympy import ZZ

Matrix = List[List[int]]


def add_columns(m: Matrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # replace m[:, i] by a*m[:, i] + b*m[:, j]
    # and m[:, j] by c*m[:, i] + d*m[:, j]
    for row in m:
        e = row[i]
        row[i] = a * e + b * row[j]
        row[j] = c * e + d * row[j]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def column_hnf(A: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, List[Tuple[int, int]]]:
    """Return (H, U, pivots) with H = A*U in column Hermite form.

    pivots lists (row, column) for every pivot, in row order.
    """
    H = [[int(v) for v in row] for row in A]
    n = len(H[0]) if H else 0
    U = identity(n)
    pivots: List[Tuple[int, int]] = []
    c = 0
    for i, row in enumerate(H):
        if c >= n:
            break
        for j in range(c + 1, n):
            if row[j] == 0:
                continue
            a, b = row[c], row[j]
            x, y, g = (int(v) for v in ZZ.gcdex(a, b))
            # det [[x, -b/g], [y, a/g]] = 1
            add_columns(H, c, j, x, y, -b // g, a // g)
            add_columns(U, c, j, x, y, -b // g, a // g)
        pivot = row[c]
        if pivot == 0:
            continue
        if pivot < 0:
            add_columns(H, c, c, -1, 0, -1, 0)
            add_columns(U, c, c, -1, 0, -1, 0)
            pivot = -pivot
        for cp in range(c):
            f = row[cp] // pivot
            if f:
                add_columns(H, cp, c, 1, -f, 0, 1)
                add_columns(U, cp, c, 1, -f, 0, 1)
        pivots.append((i, c))
        c += 1
    return H, U, pivots


def solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[List[int]]:
    """An integer solution z of A*z = b, or None when none exists."""
    H, U, pivots = column_hnf(A)
    m = len(H)
    n = len(U)
    y = [0] * n
    r = [int(v) for v in b]
    pivot_of_row = dict(pivots)
    for i in range(m):
        c = pivot_of_row.get(i)
        if c is None:
            if r[i] != 0:
                return None
            continue
        h = H[i][c]
        if r[i] % h:
            return None
        y[c] = r[i] // h
        if y[c]:
            for k in range(i, m):
                r[k] -= H[k][c] * y[c]
    z = [sum(U[i][j] * y[j] for j in range(n) if y[j]) for i in range(n)]
    assert all(sum(a * v for a, v in zip(row, z)) == rhs for row, rhs in zip(A, b))
    return z


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], m: int) -> Optional[List[int]]:
    """A solution x in [0, m) of A*x = b (mod m), or None."""
    rows = len(A)
    stacked = [list(A[i]) + [m if k == i else 0 for k in range(rows)] for i in range(rows)]
    z = solve(stacked, b)
    if z is None:
        return None
    cols = len(A[0]) if A else 0
    return [v % m for v in z[:cols]]
