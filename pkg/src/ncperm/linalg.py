"""Dense exact linear algebra over a FieldSpec.

Matrices are lists of row lists of Scalars.  Everything here is plain
Gaussian elimination with exact field division; the matrices are at most
(rank+2)-square, so no pivoting strategy beyond "first nonzero" is needed.
"""

from __future__ import annotations

from .errors import InvalidInputError


def mat_vec(field, mat, vec):
    return tuple(sum((row[j] * vec[j] for j in range(len(vec))), field.zero())
                 for row in mat)


def _eliminate(field, rows, ncols):
    """Row-reduce in place; returns list of pivot column indices."""
    pivots = []
    rank_row = 0
    for col in range(ncols):
        piv = None
        for i in range(rank_row, len(rows)):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[rank_row], rows[piv] = rows[piv], rows[rank_row]
        inv = field.one() / rows[rank_row][col]
        rows[rank_row] = [x * inv for x in rows[rank_row]]
        for i in range(len(rows)):
            if i != rank_row and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank_row])]
        pivots.append(col)
        rank_row += 1
        if rank_row == len(rows):
            break
    return pivots


def mat_rank(field, mat):
    rows = [list(r) for r in mat]
    if not rows:
        return 0
    return len(_eliminate(field, rows, len(rows[0])))


def mat_det(field, mat):
    n = len(mat)
    rows = [list(r) for r in mat]
    det = field.one()
    for col in range(n):
        piv = None
        for i in range(col, n):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            return field.zero()
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = field.one() / rows[col][col]
        for i in range(col + 1, n):
            if not rows[i][col].is_zero():
                f = rows[i][col] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return det


def mat_solve(field, mat, rhs):
    """Solve mat @ x = rhs for square mat; None if singular."""
    n = len(mat)
    rows = [list(mat[i]) + [rhs[i]] for i in range(n)]
    pivots = _eliminate(field, rows, n)
    if len(pivots) < n:
        return None
    return tuple(rows[i][n] for i in range(n))


def mat_inverse(field, mat):
    n = len(mat)
    one, zero = field.one(), field.zero()
    rows = [list(mat[i]) + [one if j == i else zero for j in range(n)]
            for i in range(n)]
    pivots = _eliminate(field, rows, n)
    if len(pivots) < n:
        raise InvalidInputError("matrix is singular")
    return [row[n:] for row in rows]


def nullspace_vector(field, mat):
    """A nonzero kernel vector of an m x n matrix with nullity >= 1."""
    if not mat:
        raise InvalidInputError("empty matrix")
    n = len(mat[0])
    rows = [list(r) for r in mat]
    pivots = _eliminate(field, rows, n)
    free = [j for j in range(n) if j not in pivots]
    if not free:
        return None
    j0 = free[0]
    vec = [field.zero()] * n
    vec[j0] = field.one()
    for i, col in enumerate(pivots):
        vec[col] = -rows[i][j0]
    return tuple(vec)


def solve_in_basis(field, basis_inverse, vec):
    """Coordinates of vec in a basis given by the inverse basis matrix."""
    return mat_vec(field, basis_inverse, vec)
