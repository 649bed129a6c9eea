"""Linear Hodge-index machinery for constant (1,1)-forms on C^n.

Fix an Ω-tuple (A_1, ..., A_{n-2}) of Hermitian matrices.  The symmetric
bilinear form Q(X, Y) = D(A_1, ..., A_{n-2}, X, Y) on the real n^2-space
of Hermitian matrices is what every function here inspects: its Gram
matrix, the primitive subspace of a reference η (kernel of Q(η, ·)), the
signature of Q restricted to that subspace, and the Lefschetz splitting
β = c·η + γ.

The complex primitive space of (1,1)-forms is the complexification of the
real kernel computed here, because Q(η, ·) has real coefficients in the
Hermitian basis; so negative definiteness on the complex space is the same
as negative definiteness of the real restricted Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .errors import InputError, PreconditionError
from .exact import (
    GaussianRational,
    HermitianMatrix,
    basis_support,
    decompose_in_basis,
    perm_sign,
    recompose,
    to_gauss_int,
)
from .linalg import (
    Signature,
    bilinear,
    congruence_diagonalize,
    dot,
    nullspace,
    rank,
    restrict,
    signature_of,
)
from .mixed import mixed_disc, mixed_disc_gauss_int

SATISFIES_HIT = "SatisfiesHIT"
SEMI_NEGATIVE = "SemiNegativeWithKernel"
INDEFINITE = "Indefinite"


def _dim(omega: Sequence[HermitianMatrix], n: int | None, *others: HermitianMatrix) -> int:
    if n is None:
        for A in (*others, *omega):
            n = A.n
            break
    if n is None:
        raise InputError("cannot infer n from an empty omega tuple; pass n explicitly")
    if n < 2:
        raise InputError("omega tuples need n >= 2")
    if len(omega) != n - 2:
        raise InputError(f"omega tuple has {len(omega)} items, expected n-2 = {n - 2}")
    for A in (*omega, *others):
        if A.n != n:
            raise InputError(f"dimension mismatch: got a {A.n}x{A.n} matrix, expected n={n}")
    return n


def _minor(rows, drop_r, drop_c):
    return [[x for j, x in enumerate(r) if j not in drop_c] for i, r in enumerate(rows) if i not in drop_r]


def _scaled(mats: Sequence[HermitianMatrix]):
    ints, denoms = [], []
    for A in mats:
        a, d = to_gauss_int(A.entries)
        ints.append(a)
        denoms.append(d)
    return ints, prod(denoms)


@dataclass(frozen=True)
class FunctionalVec:
    """Coefficients of B ↦ D(prefix, x, B) in the Hermitian basis."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, B: HermitianMatrix) -> Fraction:
        return dot(self.coeffs, decompose_in_basis(B, self.n))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def functional(prefix: Sequence[HermitianMatrix], x: HermitianMatrix) -> FunctionalVec:
    """The functional B ↦ D(prefix..., x, B), by cofactor-style expansion.

    D(A_1..A_{n-1}, E_pq) = (-1)^{p+q} D(minors of A_k without row p, col q).
    """
    n = _dim(prefix, None, x)
    mats = list(prefix) + [x]
    ints, scale = _scaled(mats)
    F = {}
    for p in range(n):
        for q in range(n):
            minors = [_minor(a, (p,), (q,)) for a in ints]
            re, im = mixed_disc_gauss_int(minors)
            if re or im:
                s = -1 if (p + q) & 1 else 1
                F[p, q] = GaussianRational(Fraction(s * re, scale), Fraction(s * im, scale))
    coeffs = []
    for supp in basis_support(n):
        acc = GaussianRational(0)
        for i, j, u in supp:
            v = F.get((i, j))
            if v is not None:
                acc = acc + u * v
        assert acc.im == 0
        coeffs.append(acc.re)
    return FunctionalVec(n, tuple(coeffs))


def pair_tensor(omega: Sequence[HermitianMatrix], n: int | None = None) -> dict:
    """Nonzero values D(Ω, E_ij, E_kl) keyed by (i, j, k, l).

    With R = rows minus {i, k} and C = cols minus {j, l}, the value is
    sgn(R, i, k) sgn(C, j, l) D(A_1[R, C], ..., A_{n-2}[R, C]).
    """
    n = _dim(omega, n)
    ints, scale = _scaled(omega)
    T = {}
    idx = range(n)
    for i, k in combinations(idx, 2):
        R = [r for r in idx if r != i and r != k]
        for j, l in combinations(idx, 2):
            C = [c for c in idx if c != j and c != l]
            re, im = mixed_disc_gauss_int([_minor(a, (i, k), (j, l)) for a in ints])
            if not (re or im):
                continue
            base = perm_sign(R + [i, k]) * perm_sign(C + [j, l])
            v = GaussianRational(Fraction(base * re, scale), Fraction(base * im, scale))
            # swapping the two trailing rows (or columns) flips the sign
            T[i, j, k, l] = v
            T[k, l, i, j] = v
            T[i, l, k, j] = -v
            T[k, j, i, l] = -v
    return T


@dataclass(frozen=True)
class GramMatrix:
    """G[k][l] = D(Ω, basis_k, basis_l)."""

    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        return bilinear(self.entries, u, v)

    def signature(self) -> Signature:
        return signature_of(self.entries)


def gram(omega: Sequence[HermitianMatrix], n: int | None = None) -> GramMatrix:
    n = _dim(omega, n)
    T = pair_tensor(omega, n)
    supp = basis_support(n)
    N = n * n
    G = [[Fraction(0)] * N for _ in range(N)]
    for a in range(N):
        for b in range(a, N):
            acc = GaussianRational(0)
            for p, q, u in supp[a]:
                for r, s, v in supp[b]:
                    t = T.get((p, q, r, s))
                    if t is not None:
                        acc = acc + u * v * t
            assert acc.im == 0
            G[a][b] = G[b][a] = acc.re
    return GramMatrix(n, tuple(tuple(r) for r in G))


@dataclass(frozen=True)
class PrimitiveSubspace:
    n: int
    basis_vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis_vectors)

    def matrices(self) -> list[HermitianMatrix]:
        return [recompose(v, self.n) for v in self.basis_vectors]


def primitive_space(omega: Sequence[HermitianMatrix], eta: HermitianMatrix) -> PrimitiveSubspace:
    """Kernel of γ ↦ D(Ω, η, γ); the whole space when that functional is zero."""
    n = _dim(omega, None, eta)
    f = functional(omega, eta)
    vecs = nullspace([list(f.coeffs)]) if not f.is_zero() else nullspace([], n * n)
    return PrimitiveSubspace(n, tuple(tuple(v) for v in vecs))


def signature_on(g: GramMatrix, sub: PrimitiveSubspace) -> Signature:
    if g.n != sub.n:
        raise InputError("gram and subspace dimensions differ")
    return signature_of(restrict(g.entries, sub.basis_vectors))


def _combine(coords: Sequence[Fraction], basis: Sequence[Sequence[Fraction]], N: int) -> list[Fraction]:
    v = [Fraction(0)] * N
    for c, b in zip(coords, basis):
        if c:
            for t in range(N):
                v[t] += c * b[t]
    return v


@dataclass(frozen=True)
class HodgeIndexResult:
    verdict: str
    signature: Signature
    kernel: tuple[tuple[Fraction, ...], ...] = ()
    witness: tuple[Fraction, ...] | None = None
    primitive_dimension: int = 0


def hodge_index_check(
    omega: Sequence[HermitianMatrix],
    eta: HermitianMatrix,
    g: GramMatrix | None = None,
) -> HodgeIndexResult:
    """Classify Q on the primitive space of (Ω, η).

    SatisfiesHIT when Q is negative definite there; SemiNegativeWithKernel
    with an exact basis of the null directions when it is only
    semi-negative; Indefinite with a primitive v, Q(v, v) > 0, otherwise.
    """
    n = _dim(omega, None, eta)
    if g is None:
        g = gram(omega, n)
    sub = primitive_space(omega, eta)
    N = n * n
    R = restrict(g.entries, sub.basis_vectors)
    d, P = congruence_diagonalize(R)
    sig = Signature(sum(x > 0 for x in d), sum(x == 0 for x in d), sum(x < 0 for x in d))
    if sig.positive:
        idx = next(i for i, x in enumerate(d) if x > 0)
        w = _combine(P[idx], sub.basis_vectors, N)
        assert g.form(w, w) > 0
        return HodgeIndexResult(INDEFINITE, sig, witness=tuple(w), primitive_dimension=sub.dimension)
    if sig.zero:
        ker = [tuple(_combine(c, sub.basis_vectors, N)) for c in nullspace(R)]
        return HodgeIndexResult(SEMI_NEGATIVE, sig, kernel=tuple(ker), primitive_dimension=sub.dimension)
    return HodgeIndexResult(SATISFIES_HIT, sig, primitive_dimension=sub.dimension)


def lefschetz(
    omega: Sequence[HermitianMatrix], eta: HermitianMatrix, beta: HermitianMatrix
) -> tuple[Fraction, HermitianMatrix]:
    """Split β = c·η + γ with γ primitive for (Ω, η)."""
    _dim(omega, None, eta, beta)
    omega = list(omega)
    dee = mixed_disc(omega + [eta, eta])
    if dee == 0:
        raise PreconditionError("lefschetz needs D(Ω, η, η) != 0")
    c = mixed_disc(omega + [eta, beta]) / dee
    return c, beta - eta.scale(c)


@dataclass(frozen=True)
class ZeroVectorCheck:
    """Outcome of the zero-eigenvector test; falsy means a theorem violation."""

    vanishes: bool
    functional: FunctionalVec
    gamma: HermitianMatrix

    def __bool__(self):
        return self.vanishes


def zero_vector_check(
    omega: Sequence[HermitianMatrix], eta: HermitianMatrix, gamma: HermitianMatrix
) -> ZeroVectorCheck:
    """For primitive γ with Q(γ, γ) = 0, report whether D(Ω, γ, ·) vanishes.

    Preconditions (raised as PreconditionError, never a False verdict):
    Ω and η PSD, D(Ω, η, η) != 0, γ primitive, Q(γ, γ) = 0.
    """
    from .positivity import is_psd

    _dim(omega, None, eta, gamma)
    omega = list(omega)
    for k, A in enumerate(omega):
        if not is_psd(A).psd:
            raise PreconditionError(f"omega item {k} is not positive semidefinite")
    if not is_psd(eta).psd:
        raise PreconditionError("eta is not positive semidefinite")
    if mixed_disc(omega + [eta, eta]) == 0:
        raise PreconditionError("D(Ω, η, η) = 0")
    if mixed_disc(omega + [eta, gamma]) != 0:
        raise PreconditionError("gamma is not primitive: D(Ω, η, γ) != 0")
    if mixed_disc(omega + [gamma, gamma]) != 0:
        raise PreconditionError("Q(γ, γ) != 0")
    f = functional(omega, gamma)
    return ZeroVectorCheck(f.is_zero(), f, gamma)


def functional_rank(omega: Sequence[HermitianMatrix], n: int | None = None) -> int:
    """Rank of A ↦ D(Ω, A, ·); n^2 means the map is injective."""
    return rank(gram(omega, n).entries)
