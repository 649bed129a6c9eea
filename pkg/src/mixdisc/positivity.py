"""Exact positivity tests for constant (1,1)-forms.

PSD-ness is read off the signs of the coefficients e_k of
det(tI + A) = Σ e_k t^{n-k} (elementary symmetric functions of the
eigenvalues), obtained by the Faddeev-LeVerrier recurrence.

In the constant-form model a top-degree form is positive iff its mixed
discriminant is positive, so m-positivity of α with respect to
(ω_1 ∧ ... ∧ ω_m, η) reduces to the signs of
d_k = D(ω_1, ..., ω_m, η^{n-m-k}, α^k), k = 1..n-m.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InputError
from .exact import HermitianMatrix, det, to_gauss_int
from .mixed import mixed_disc

PD = "PD"
PSD_RANK_DEFICIENT = "PSD_rank_deficient"
NOT_PSD = "NotPSD"


def char_coefficients(A: HermitianMatrix) -> list[Fraction]:
    """[e_0, ..., e_n] with det(tI + A) = Σ_k e_k t^{n-k}; e_0 = 1.

    Faddeev-LeVerrier on the Gaussian-integer matrix dA (d the common
    denominator); every intermediate is integral, divisions are exact.
    """
    n = A.n
    a, d = to_gauss_int(A.entries)
    # det(tI - dA) = Σ c_k t^k
    c = [0] * (n + 1)
    c[n] = 1
    M = [[(0, 0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = (dA) M_{k-1} + c_{n-k+1} I
        new = []
        for i in range(n):
            ai = a[i]
            row = []
            for j in range(n):
                re = im = 0
                for t in range(n):
                    xr, xi = ai[t]
                    yr, yi = M[t][j]
                    if (xr or xi) and (yr or yi):
                        re += xr * yr - xi * yi
                        im += xr * yi + xi * yr
                if i == j:
                    re += c[n - k + 1]
                row.append((re, im))
            new.append(row)
        M = new
        # c_{n-k} = -tr(dA M_k) / k
        tr_re = tr_im = 0
        for i in range(n):
            for t in range(n):
                xr, xi = a[i][t]
                yr, yi = M[t][i]
                tr_re += xr * yr - xi * yi
                tr_im += xr * yi + xi * yr
        assert tr_im == 0 and tr_re % k == 0
        c[n - k] = -tr_re // k
    # det(tI + dA) = Σ e_k(dA) t^{n-k} with e_k = (-1)^k c_{n-k}; e_k(A) = e_k(dA) / d^k
    return [Fraction(c[n - k] if k % 2 == 0 else -c[n - k], d**k) for k in range(n + 1)]


@dataclass(frozen=True)
class PositivityReport:
    """kind is PD, PSD_rank_deficient or NotPSD.

    ``coefficients`` are the e_k; for NotPSD, ``failing_index`` is the first
    k with e_k < 0 (so the certificate is recomputable from A alone).
    """

    kind: str
    rank: int | None
    coefficients: tuple[Fraction, ...]
    failing_index: int | None = None

    @property
    def psd(self) -> bool:
        return self.kind != NOT_PSD

    @property
    def pd(self) -> bool:
        return self.kind == PD


def is_psd(A: HermitianMatrix) -> PositivityReport:
    e = char_coefficients(A)
    bad = next((k for k, x in enumerate(e) if x < 0), None)
    if bad is not None:
        return PositivityReport(NOT_PSD, None, tuple(e), bad)
    r = max(k for k, x in enumerate(e) if x != 0)
    kind = PD if r == A.n else PSD_RANK_DEFICIENT
    return PositivityReport(kind, r, tuple(e))


def is_psd_minors(A: HermitianMatrix) -> bool:
    """Oracle: every principal minor is >= 0 (2^n - 1 determinants)."""
    n = A.n
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            m = det([[A.entries[i][j] for j in S] for i in S])
            if m.re < 0:
                return False
    return True


@dataclass(frozen=True)
class ConeQuery:
    m: int
    kaehler_factors: tuple[HermitianMatrix, ...]
    alpha: HermitianMatrix
    eta: HermitianMatrix | None = None

    def __post_init__(self):
        n = self.alpha.n
        object.__setattr__(self, "kaehler_factors", tuple(self.kaehler_factors))
        if self.eta is None:
            object.__setattr__(self, "eta", HermitianMatrix.identity(n))
        if not 0 <= self.m <= n - 2:
            raise InputError(f"m must satisfy 0 <= m <= n-2 (n={n}), got {self.m}")
        if len(self.kaehler_factors) != self.m:
            raise InputError(f"expected {self.m} kaehler factors, got {len(self.kaehler_factors)}")
        for k, w in enumerate(self.kaehler_factors):
            if w.n != n:
                raise InputError(f"kaehler factor {k} has dimension {w.n}, expected {n}")
            if not is_psd(w).pd:
                raise InputError(f"kaehler factor {k} is not positive definite")
        if self.eta.n != n:
            raise InputError("eta dimension mismatch")

    @property
    def n(self) -> int:
        return self.alpha.n


@dataclass(frozen=True)
class MPositivity:
    values: tuple[Fraction, ...]  # d_1 .. d_{n-m}
    fails_at: int | None = None

    @property
    def positive(self) -> bool:
        return self.fails_at is None


def m_positivity_values(q: ConeQuery) -> list[Fraction]:
    n, m = q.n, q.m
    out = []
    for k in range(1, n - m + 1):
        mats = list(q.kaehler_factors) + [q.eta] * (n - m - k) + [q.alpha] * k
        out.append(mixed_disc(mats))
    return out


def m_positivity_check(q: ConeQuery) -> MPositivity:
    vals = m_positivity_values(q)
    fail = next((k for k, v in enumerate(vals, start=1) if v <= 0), None)
    return MPositivity(tuple(vals), fail)


class ConeMembership(str, enum.Enum):
    INTERIOR = "Interior"
    CLOSURE_BOUNDARY = "Closure_boundary"
    OUTSIDE = "Outside"


def cone_gamma_membership(q: ConeQuery) -> ConeMembership:
    """Interior if every d_k > 0; Closure_boundary if all d_k >= 0 with a zero.

    The boundary verdict reports exactly that certificate and nothing more.
    """
    vals = m_positivity_values(q)
    if all(v > 0 for v in vals):
        return ConeMembership.INTERIOR
    if all(v >= 0 for v in vals):
        return ConeMembership.CLOSURE_BOUNDARY
    return ConeMembership.OUTSIDE
