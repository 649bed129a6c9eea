"""Mixed discriminants.

Normalization: D is the full polarization of det, with no 1/n! factor, so
``D(A, ..., A) == n! * det(A)`` and ``D(I, ..., I) == n!``.  This is the
Hodge-star convention ``D(A_1..A_n) = *(Â_1 ∧ ... ∧ Â_n)`` with
``Â = (i/2) Σ a_ij dz^i ∧ dz̄^j``.

Two independent algorithms are provided:

* :func:`mixed_disc` -- inclusion-exclusion over the 2^n subset sums,
  each determinant by Bareiss elimination over Z[i];
* :func:`mixed_disc_oracle` -- the double sum over S_n x S_n in plain
  Q(i) arithmetic, capped at small n.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import prod
from typing import Sequence

from .errors import InputError
from .exact import (
    ONE,
    ZERO,
    GaussianRational,
    HermitianMatrix,
    det_gauss_int,
    perm_sign,
    to_gauss_int,
)

NORMALIZATION = "star-operator, D(I..I)=n!"

ORACLE_CAP = 5

__all__ = [
    "NORMALIZATION",
    "mixed_disc",
    "mixed_disc_complex",
    "mixed_disc_oracle",
    "mixed_disc_multi",
    "expand_multi",
    "mixed_disc_gauss_int",
]


def _check_tuple(mats: Sequence[HermitianMatrix]) -> int:
    n = len(mats)
    if n == 0:
        raise InputError("matrix tuple is empty")
    for k, A in enumerate(mats):
        if A.n != n:
            raise InputError(f"matrix {k} has dimension {A.n}, tuple needs {n} matrices of dimension {n}")
    return n


def mixed_disc_gauss_int(mats: Sequence[list[list[tuple[int, int]]]]) -> tuple[int, int]:
    """Polarization over Z[i] for k matrices of size k x k (any k >= 0).

    Works for arbitrary square matrices, not only Hermitian ones; the
    Gram-tensor code feeds it non-symmetric minors.
    """
    k = len(mats)
    if k == 0:
        return (1, 0)
    # subset sums, built incrementally off the lowest set bit
    sums: list = [None] * (1 << k)
    sums[0] = [[(0, 0)] * k for _ in range(k)]
    tr, ti = 0, 0
    for mask in range(1, 1 << k):
        low = (mask & -mask).bit_length() - 1
        base = sums[mask & (mask - 1)]
        M = mats[low]
        S = [[(a[0] + b[0], a[1] + b[1]) for a, b in zip(r, s)] for r, s in zip(base, M)]
        sums[mask] = S
        dr, di = det_gauss_int([list(r) for r in S])
        if (k - bin(mask).count("1")) & 1:
            tr -= dr
            ti -= di
        else:
            tr += dr
            ti += di
    return tr, ti


def mixed_disc_complex(mats: Sequence) -> GaussianRational:
    """D over Q(i) for square matrices given as rows (not necessarily Hermitian)."""
    rows = [M.rows() if isinstance(M, HermitianMatrix) else M for M in mats]
    ints, denoms = [], []
    for r in rows:
        a, d = to_gauss_int(r)
        ints.append(a)
        denoms.append(d)
    re, im = mixed_disc_gauss_int(ints)
    scale = prod(denoms)
    return GaussianRational(Fraction(re, scale), Fraction(im, scale))


def mixed_disc(mats: Sequence[HermitianMatrix]) -> Fraction:
    """Exact mixed discriminant of n Hermitian n x n matrices (a real number)."""
    _check_tuple(mats)
    z = mixed_disc_complex(mats)
    assert z.im == 0, "mixed discriminant of Hermitian matrices must be real"
    return z.re


def mixed_disc_oracle(mats: Sequence[HermitianMatrix], cap: int = ORACLE_CAP) -> Fraction:
    """Σ_{σ,τ} sgn σ sgn τ Π_k (A_k)[σ(k), τ(k)] summed exactly; cost (n!)^2."""
    n = _check_tuple(mats)
    if n > cap:
        raise InputError(f"oracle cap exceeded: n={n} > {cap}")
    perms = [(p, perm_sign(p)) for p in permutations(range(n))]
    entries = [A.entries for A in mats]
    total = ZERO
    for s, ss in perms:
        for t, st in perms:
            term = ONE
            for k in range(n):
                x = entries[k][s[k]][t[k]]
                if not x:
                    term = ZERO
                    break
                term = term * x
            if term:
                total = total + term * (ss * st)
    assert total.im == 0
    return total.re


def expand_multi(prefix: Sequence[tuple[HermitianMatrix, int]]) -> list[HermitianMatrix]:
    out = []
    for A, m in prefix:
        if m < 0:
            raise InputError(f"negative multiplicity {m}")
        out.extend([A] * m)
    return out


def mixed_disc_multi(prefix: Sequence[tuple[HermitianMatrix, int]]) -> Fraction:
    """D with repeated arguments, e.g. ``[(I, 2), (B, 1)]`` for D(I, I, B)."""
    mats = expand_multi(prefix)
    if prefix and len(mats) != prefix[0][0].n:
        raise InputError(f"multiplicities sum to {len(mats)}, expected n={prefix[0][0].n}")
    return mixed_disc(mats)
