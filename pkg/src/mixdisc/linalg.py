"""Dense exact linear algebra over Q: row reduction, kernels, congruence.

Matrices are plain lists of lists of Fraction.  Small sizes only (n^2 <= 25
rows), so nothing here tries to be clever about fill-in.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


class Signature(NamedTuple):
    positive: int
    zero: int
    negative: int

    def to_json(self) -> dict:
        return {"pos": self.positive, "zero": self.zero, "neg": self.negative}


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        rowr = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], rowr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : rows @ x = 0}; one vector per free column, free entry = 1."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def matvec(M: Sequence[Sequence], v: Sequence) -> Vector:
    return [dot(r, v) for r in M]


def bilinear(M: Sequence[Sequence], u: Sequence, v: Sequence) -> Fraction:
    return dot(u, matvec(M, v))


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*M)]


def restrict(G: Sequence[Sequence], basis: Sequence[Sequence]) -> Matrix:
    """B^T G B for the matrix B whose columns are ``basis``."""
    cols = transpose(G)
    GB = []  # column k of G B; basis vectors are usually sparse
    for b in basis:
        acc = [Fraction(0)] * len(G)
        for t, c in enumerate(b):
            if c:
                col = cols[t]
                acc = [x + c * y if y else x for x, y in zip(acc, col)]
        GB.append(acc)
    return [[dot(bi, gbj) for gbj in GB] for bi in basis]


def congruence_diagonalize(M: Sequence[Sequence]) -> tuple[Vector, Matrix]:
    """Exact symmetric congruence: returns (d, P) with P^T M P = diag(d).

    Pivot choice is deterministic: the first nonzero diagonal entry in
    index order; failing that, the first nonzero off-diagonal (i, j),
    i < j, which is made into a diagonal entry by adding row/col j to
    row/col i.  ``P`` is returned as a list of columns.
    """
    n = len(M)
    A = [[Fraction(x) for x in r] for r in M]
    P = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]  # columns
    d: Vector = []
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j] != 0), None)
            if pair is None:
                d.extend(Fraction(0) for _ in range(k, n))
                break
            i, j = pair
            # row_i += row_j; col_i += col_j  =>  A_ii = 2 A_ij
            A[i] = [a + b for a, b in zip(A[i], A[j])]
            for r in range(n):
                A[r][i] += A[r][j]
            P[i] = [a + b for a, b in zip(P[i], P[j])]
            p = i
        if p != k:
            A[k], A[p] = A[p], A[k]
            for r in range(n):
                A[r][k], A[r][p] = A[r][p], A[r][k]
            P[k], P[p] = P[p], P[k]
        piv = A[k][k]
        rowk = A[k]
        for r in range(k + 1, n):
            f = A[r][k] / piv
            if not f:
                continue
            A[r] = [a - f * b for a, b in zip(A[r], rowk)]
            for s in range(k, n):
                A[s][r] -= f * A[s][k]
            P[r] = [a - f * b for a, b in zip(P[r], P[k])]
        d.append(piv)
    return d, P


def signature_of(M: Sequence[Sequence]) -> Signature:
    d, _ = congruence_diagonalize(M)
    return Signature(sum(1 for x in d if x > 0), sum(1 for x in d if x == 0), sum(1 for x in d if x < 0))
