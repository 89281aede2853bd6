"""Square matrices with a division-free determinant and adjugate.

Entries may be anything supporting ``+``, ``-`` and ``*`` (scalars or
polynomials).  The determinant uses Laplace expansion along the first row,
with minors memoised by their (rows, columns) signature, which is plenty for
the sizes used here (l <= 4).
"""
from __future__ import annotations

from functools import lru_cache


class SquareMatrix:
    __slots__ = ("size", "entries")

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        self.size = n
        self.entries = tuple(tuple(r) for r in rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    def transpose(self):
        n = self.size
        return SquareMatrix([[self.entries[j][i] for j in range(n)] for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            n = self.size
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = self.entries[i][0] * other.entries[0][j]
                    for k in range(1, n):
                        acc = acc + self.entries[i][k] * other.entries[k][j]
                    row.append(acc)
                out.append(row)
            return SquareMatrix(out)
        return SquareMatrix([[x * other for x in r] for r in self.entries])

    __rmul__ = __mul__

    def apply(self, vec):
        """Matrix times column vector (a list)."""
        out = []
        for r in self.entries:
            acc = r[0] * vec[0]
            for a, b in zip(r[1:], vec[1:]):
                acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        return isinstance(other, SquareMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "SquareMatrix(" + repr([[str(x) for x in r] for r in self.entries]) + ")"

    def map(self, fn):
        return SquareMatrix([[fn(x) for x in r] for r in self.entries])


def _one_like(x):
    return x ** 0


def determinant(M: SquareMatrix):
    E = M.entries
    n = M.size

    @lru_cache(maxsize=None)
    def minor(rows, cols):
        if len(rows) == 1:
            return E[rows[0]][cols[0]]
        r0, rest = rows[0], rows[1:]
        acc = None
        for k, c in enumerate(cols):
            sub = minor(rest, cols[:k] + cols[k + 1:])
            term = E[r0][c] * sub
            if k % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    return minor(tuple(range(n)), tuple(range(n)))


def det_and_adjugate(M: SquareMatrix):
    """Return ``(det M, adj M)`` with ``adj(M)*M == M*adj(M) == det(M)*I``.

    The adjugate of a 1x1 matrix is ``[1]``.
    """
    n = M.size
    E = M.entries
    det = determinant(M)
    if n == 1:
        return det, SquareMatrix([[_one_like(E[0][0])]])
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = SquareMatrix(
                [[E[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            )
            cof = determinant(sub)
            # adjugate is the transposed cofactor matrix
            adj[j][i] = -cof if (i + j) % 2 else cof
    return det, SquareMatrix(adj)


def identity_like(M: SquareMatrix, scalar):
    zero = scalar - scalar
    return SquareMatrix([[scalar if i == j else zero for j in range(M.size)] for i in range(M.size)])
