"""Exact scalars and Hermitian matrices over the Gaussian rationals Q(i).

Nothing in here touches floating point.  Real scalars are
:class:`fractions.Fraction`; complex scalars are :class:`GaussianRational`.
Determinants are computed by fraction-free (Bareiss) elimination over the
Gaussian integers after clearing denominators, with Laplace expansion kept
as a slow oracle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import InputError

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "HermitianMatrix",
    "as_rational",
    "as_gaussian",
    "det",
    "det_laplace",
    "matmul",
    "conj_transpose",
    "hermitian_basis",
    "basis_support",
    "decompose_in_basis",
    "recompose",
    "perm_sign",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: a float literal is almost never the rational the
    caller meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"boolean is not a rational: {x!r}")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not an exact rational: {x!r} ({type(x).__name__})")


class GaussianRational:
    """An element re + i*im of Q(i).  Treat instances as immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = as_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_gaussian(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        q = as_rational(other)
        return GaussianRational(self.re * q, self.im * q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gaussian(other)
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        c, d = other.re / n, -other.im / n
        return GaussianRational(self.re * c - self.im * d, self.re * d + self.im * c)

    def __rtruediv__(self, other):
        return as_gaussian(other) / self

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"G({self.re})"
        return f"G({self.re}, {self.im})"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I_UNIT = GaussianRational(0, 1)


def as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        # integer-valued complex literals only (1j, 2-3j, ...)
        if not (x.real.is_integer() and x.imag.is_integer()):
            raise InputError(f"complex literal with non-integer parts: {x!r}")
        return GaussianRational(int(x.real), int(x.imag))
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return GaussianRational(x[0], x[1])
    return GaussianRational(as_rational(x), 0)


# ---------------------------------------------------------------------------
# Generic square matrices (lists of lists of GaussianRational)


def _rows(M) -> list[list[GaussianRational]]:
    if isinstance(M, HermitianMatrix):
        return [list(r) for r in M.entries]
    rows = [[as_gaussian(x) for x in r] for r in M]
    return rows


def matmul(A, B) -> list[list[GaussianRational]]:
    A, B = _rows(A), _rows(B)
    if A and len(A[0]) != len(B):
        raise InputError("matmul: inner dimensions differ")
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), ZERO) for col in cols] for row in A]


def conj_transpose(A) -> list[list[GaussianRational]]:
    A = _rows(A)
    return [list(col) for col in zip(*[[x.conjugate() for x in r] for r in A])]


def to_gauss_int(rows, denom: int | None = None):
    """Scale a Q(i) matrix to Z[i]; returns (int-pair matrix, common denominator)."""
    if denom is None:
        denom = 1
        for r in rows:
            for x in r:
                denom = lcm(denom, x.re.denominator, x.im.denominator)
    out = [
        [
            (x.re.numerator * (denom // x.re.denominator), x.im.numerator * (denom // x.im.denominator))
            for x in r
        ]
        for r in rows
    ]
    return out, denom


def det_gauss_int(a: list[list[tuple[int, int]]]) -> tuple[int, int]:
    """Bareiss elimination over Z[i].  Consumes (mutates) ``a``."""
    n = len(a)
    if n == 0:
        return (1, 0)
    sign = 1
    pr, pi = 1, 0
    for k in range(n - 1):
        if a[k][k] == (0, 0):
            for r in range(k + 1, n):
                if a[r][k] != (0, 0):
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        kr, ki = a[k][k]
        rowk = a[k]
        nrm = pr * pr + pi * pi
        for i in range(k + 1, n):
            rowi = a[i]
            ir, ii = rowi[k]
            for j in range(k + 1, n):
                xr, xi = rowi[j]
                yr, yi = rowk[j]
                # akk * aij - aik * akj
                nr = kr * xr - ki * xi - (ir * yr - ii * yi)
                ni = kr * xi + ki * xr - (ir * yi + ii * yr)
                if nrm == 1 and pi == 0:
                    rowi[j] = (nr * pr, ni * pr)
                else:
                    # exact division by the previous pivot
                    rowi[j] = ((nr * pr + ni * pi) // nrm, (ni * pr - nr * pi) // nrm)
        pr, pi = kr, ki
    r, i = a[n - 1][n - 1]
    return (sign * r, sign * i)


def det(M) -> GaussianRational:
    """Exact determinant of a square matrix over Q(i)."""
    rows = _rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("det: matrix is not square")
    a, d = to_gauss_int(rows)
    re, im = det_gauss_int(a)
    scale = d**n
    return GaussianRational(Fraction(re, scale), Fraction(im, scale))


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def det_laplace(M) -> GaussianRational:
    """Leibniz/Laplace determinant; the oracle for small matrices."""
    rows = _rows(M)
    n = len(rows)
    total = ZERO
    for p in permutations(range(n)):
        term = ONE
        for i, j in enumerate(p):
            term = term * rows[i][j]
        total = total + term * perm_sign(p)
    return total


# ---------------------------------------------------------------------------
# Hermitian matrices


class HermitianMatrix:
    """An exact n x n Hermitian matrix.  The constructor validates symmetry."""

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, entries: Iterable[Iterable], *, check: bool = True):
        rows = tuple(tuple(as_gaussian(x) for x in r) for r in entries)
        n = len(rows)
        if check:
            if n < 1:
                raise InputError("Hermitian matrix must have n >= 1")
            for i, r in enumerate(rows):
                if len(r) != n:
                    raise InputError(f"row {i} has length {len(r)}, expected {n}")
            for i in range(n):
                if rows[i][i].im != 0:
                    raise InputError(f"hermitian invariant violated: diagonal entry ({i},{i}) is not real")
                for j in range(i + 1, n):
                    if rows[j][i] != rows[i][j].conjugate():
                        raise InputError(
                            f"hermitian invariant violated: entry ({j},{i}) is not conj of ({i},{j})"
                        )
        self.n = n
        self.entries = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> HermitianMatrix:
        return cls.diag([1] * n)

    @classmethod
    def zero(cls, n: int) -> HermitianMatrix:
        return cls.diag([0] * n)

    @classmethod
    def diag(cls, values: Sequence) -> HermitianMatrix:
        n = len(values)
        return cls(
            [[as_rational(values[i]) if i == j else 0 for j in range(n)] for i in range(n)],
            check=False,
        )

    @classmethod
    def unit(cls, n: int, k: int) -> HermitianMatrix:
        """The diagonal unit E_kk (0-based k)."""
        return cls.diag([1 if i == k else 0 for i in range(n)])

    def __getitem__(self, ij) -> GaussianRational:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[GaussianRational]]:
        return [list(r) for r in self.entries]

    def __add__(self, other: HermitianMatrix) -> HermitianMatrix:
        self._same_dim(other)
        return HermitianMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            check=False,
        )

    def __sub__(self, other: HermitianMatrix) -> HermitianMatrix:
        self._same_dim(other)
        return HermitianMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            check=False,
        )

    def __neg__(self) -> HermitianMatrix:
        return self.scale(-1)

    def scale(self, q) -> HermitianMatrix:
        q = as_rational(q)
        return HermitianMatrix([[x * q for x in r] for r in self.entries], check=False)

    def __mul__(self, q):
        if isinstance(q, HermitianMatrix):
            return NotImplemented
        return self.scale(q)

    __rmul__ = __mul__

    def conj_transpose(self) -> HermitianMatrix:
        return HermitianMatrix(conj_transpose(self.entries))

    def congruent(self, M) -> HermitianMatrix:
        """M^H A M for a square matrix M."""
        prod = matmul(conj_transpose(M), matmul(self.entries, M))
        return HermitianMatrix(prod)

    def trace(self) -> Fraction:
        return sum((self.entries[i][i].re for i in range(self.n)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def _same_dim(self, other):
        if not isinstance(other, HermitianMatrix) or other.n != self.n:
            raise InputError("dimension mismatch between Hermitian matrices")

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self):
        def fmt(z):
            if z.im == 0:
                return str(z.re)
            return f"{z.re}{'+' if z.im >= 0 else '-'}{abs(z.im)}i"

        body = "; ".join(", ".join(fmt(z) for z in r) for r in self.entries)
        return f"HermitianMatrix([{body}])"


# ---------------------------------------------------------------------------
# The fixed real basis of the n^2-dimensional space of Hermitian matrices:
# E_kk for k = 0..n-1, then for i < j (lexicographic) S_ij then K_ij, where
# S_ij = E_ij + E_ji and K_ij = i*(E_ij - E_ji).


@lru_cache(maxsize=None)
def basis_support(n: int) -> tuple[tuple[tuple[int, int, GaussianRational], ...], ...]:
    """Sparse description of each basis element: tuples (row, col, value)."""
    out = [((k, k, ONE),) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out.append(((i, j, ONE), (j, i, ONE)))
            out.append(((i, j, I_UNIT), (j, i, -I_UNIT)))
    return tuple(out)


@lru_cache(maxsize=None)
def hermitian_basis(n: int) -> tuple[HermitianMatrix, ...]:
    if n < 1:
        raise InputError("basis dimension must be >= 1")
    basis = []
    for supp in basis_support(n):
        rows = [[ZERO] * n for _ in range(n)]
        for i, j, v in supp:
            rows[i][j] = v
        basis.append(HermitianMatrix(rows, check=False))
    return tuple(basis)


def decompose_in_basis(A: HermitianMatrix, n: int | None = None) -> tuple[Fraction, ...]:
    """Real coordinates of A in :func:`hermitian_basis`."""
    if n is not None and A.n != n:
        raise InputError(f"dimension mismatch: matrix is {A.n}x{A.n}, basis is for n={n}")
    n = A.n
    e = A.entries
    coeffs = [e[k][k].re for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            coeffs.append(e[i][j].re)
            coeffs.append(e[i][j].im)
    return tuple(coeffs)


def recompose(coeffs: Sequence, n: int) -> HermitianMatrix:
    if len(coeffs) != n * n:
        raise InputError(f"expected {n * n} coordinates, got {len(coeffs)}")
    coeffs = [as_rational(c) for c in coeffs]
    rows = [[ZERO] * n for _ in range(n)]
    for k in range(n):
        rows[k][k] = GaussianRational(coeffs[k])
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            s, k = coeffs[pos], coeffs[pos + 1]
            pos += 2
            rows[i][j] = GaussianRational(s, k)
            rows[j][i] = GaussianRational(s, -k)
    return HermitianMatrix(rows, check=False)
