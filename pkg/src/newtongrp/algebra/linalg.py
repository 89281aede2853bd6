"""Linear solves over local rings (fields or test rings).

Gaussian elimination only ever pivots on units.  Over a local ring a square
matrix is invertible exactly when its residue matrix is, and if a column has
no unit entry at or below the diagonal the residue matrix is singular; so the
elimination either succeeds or proves non-invertibility.
"""
from __future__ import annotations

from ..errors import NotAUnit


def solve_local(A, B):
    """Solve ``A X = B`` for square ``A`` (list of rows of ScalarElem).

    ``B`` is a list of right-hand-side columns (each a list).  Returns the list
    of solution columns.  Raises :class:`NotAUnit` if ``A`` is not invertible.
    """
    n = len(A)
    M = [list(A[i]) + [col[i] for col in B] for i in range(n)]
    width = n + len(B)
    for c in range(n):
        pivot = next((i for i in range(c, n) if M[i][c].is_unit()), None)
        if pivot is None:
            raise NotAUnit("matrix is not invertible over the residue field")
        M[c], M[pivot] = M[pivot], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and not M[i][c].is_zero():
                factor = M[i][c]
                row_c = M[c]
                M[i] = [M[i][k] - factor * row_c[k] for k in range(width)]
    return [[M[i][n + j] for i in range(n)] for j in range(len(B))]


def is_invertible(A) -> bool:
    try:
        solve_local(A, [])
    except NotAUnit:
        return False
    return True
