"""Exact linear algebra kernels.

The workhorse is fraction-free (Bareiss) elimination over the integers with
partial pivoting by magnitude: rational systems are scaled row-wise to
integer matrices, eliminated without introducing fractions, and the solution
is recovered exactly by rational back-substitution.  Matrices here are tiny
(tens of rows), so clarity wins over asymptotics.
"""

from fractions import Fraction
from math import lcm


class SingularMatrix(Exception):
    """Internal: the system has no unique solution.

    Callers guard their preconditions (e.g. connectivity makes a grounded
    Laplacian positive definite), so reaching this is a bug, not bad input.
    """


def _scaled_int_rows(rows):
    """Scale each row by the lcm of its denominators; returns integer rows."""
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * mult) for f in fracs])
    return out


def _bareiss_forward(m, n, width):
    """Eliminate below the diagonal of the first n columns, in place.

    Fraction-free one-step division with partial pivoting on absolute value.
    Entries stay integral throughout (they are minors of the scaled matrix).
    """
    prev = 1
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(m[i][k]))
        if m[pivot_row][k] == 0:
            raise SingularMatrix(f"no pivot in column {k}")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            if mik == 0 and pk == prev:
                continue
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return m


def solve_columns(a_rows, b_columns):
    """Solve A x = b for several right-hand sides, exactly.

    `a_rows` is an n-by-n matrix and `b_columns` a list of length-n vectors;
    entries may be ints or Fractions.  Returns one Fraction vector per input
    column.  Raises SingularMatrix when A is singular.
    """
    n = len(a_rows)
    k = len(b_columns)
    aug = [list(a_rows[i]) + [col[i] for col in b_columns] for i in range(n)]
    m = _scaled_int_rows(aug)
    _bareiss_forward(m, n, n + k)
    solutions = []
    for c in range(k):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            s = Fraction(m[i][n + c])
            for j in range(i + 1, n):
                s -= m[i][j] * x[j]
            x[i] = s / m[i][i]
        solutions.append(x)
    return solutions


def invert(a_rows):
    """Exact inverse of a small nonsingular matrix, as rows of Fractions."""
    n = len(a_rows)
    identity = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    cols = solve_columns(a_rows, identity)
    # cols[j][i] is entry (i, j) of the inverse
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def nullspace(rows):
    """Basis of the kernel of a rational matrix (list of Fraction vectors).

    Plain Gauss-Jordan over Fractions; deterministic pivot choice (largest
    absolute value, lowest row index on ties).
    """
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot_row = max(range(r, nrows), key=lambda i: abs(m[i][c]))
        if m[pivot_row][c] == 0:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
