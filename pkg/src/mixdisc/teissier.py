"""Alexandrov / Khovanskii-Teissier inequalities and their equality cases.

Everything is decided on exact values.  For an Ω-tuple (A_1..A_{n-2}) and
Hermitian a, b the Alexandrov inequality reads

    D(Ω, a, b)^2 >= D(Ω, a, a) · D(Ω, b, b)      (Ω, a PSD),

and under either hypothesis

    B1: Ω, a PSD and D(Ω, b, b) >= 0,
    B2: Ω, a PSD and D(Ω, a, a) > 0,

equality holds iff the functionals D(Ω, a, ·) and D(Ω, b, ·) are
proportional.  :func:`classify_equality` decides an instance and, when
equality holds, produces the proportionality witness (s0, t0) or reports
why none exists.

The flat-torus variants read "nef" as constant PSD form, "Kähler" as
constant PD form and integrate with unit volume, so ∫ = D.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Sequence

from .errors import HypothesisError, InputError
from .exact import HermitianMatrix, decompose_in_basis, recompose
from .hodge import (
    SATISFIES_HIT,
    functional,
    hodge_index_check,
)
from .linalg import nullspace
from .mixed import expand_multi, mixed_disc
from .positivity import is_psd


class Mode(str, enum.Enum):
    B1 = "b1"
    B2 = "b2"
    UNCHECKED = "unchecked"


class Tag(str, enum.Enum):
    STRICT = "StrictInequality"
    EQ_PROPORTIONAL = "EqualityProportional"
    EQ_NONPROPORTIONAL = "EqualityNonProportionalOutsideHypotheses"
    HYPOTHESIS_VIOLATED = "HypothesisViolated"
    THEOREM_VIOLATION = "TheoremViolation"


@dataclass(frozen=True)
class EqualityQuery:
    omega: tuple[HermitianMatrix, ...]
    a: HermitianMatrix
    b: HermitianMatrix
    mode: Mode = Mode.UNCHECKED

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(self.omega))
        object.__setattr__(self, "mode", Mode(self.mode))
        n = self.a.n
        if self.b.n != n:
            raise InputError("a and b have different dimensions")
        if n < 2 or len(self.omega) != n - 2:
            raise InputError(f"omega must hold n-2 = {n - 2} matrices, got {len(self.omega)}")
        if any(A.n != n for A in self.omega):
            raise InputError("omega item dimension mismatch")

    @property
    def n(self) -> int:
        return self.a.n


@dataclass(frozen=True)
class Verdict:
    tag: Tag
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    gap: Fraction | None = None
    witness: tuple[Fraction, Fraction] | None = None
    flags: dict = field(default_factory=dict)
    detail: str | None = None

    @property
    def is_violation(self) -> bool:
        return self.tag is Tag.THEOREM_VIOLATION

    @property
    def equality(self) -> bool:
        return self.tag in (Tag.EQ_PROPORTIONAL, Tag.EQ_NONPROPORTIONAL) or (
            self.tag is Tag.THEOREM_VIOLATION and self.lhs == self.rhs
        )


def proportionality_witness(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, Fraction] | None:
    """(s0, t0) != (0, 0) with s0*u + t0*v = 0, or None.

    Normalized to coprime integers with the first nonzero entry positive.
    """
    if not any(u):
        return (Fraction(1), Fraction(0))
    if not any(v):
        return (Fraction(0), Fraction(1))
    p = next(i for i, x in enumerate(u) if x)
    lam = Fraction(v[p]) / Fraction(u[p])
    if any(y != lam * x for x, y in zip(u, v)):
        return None
    # lam*u - v = 0
    s, t = lam, Fraction(-1)
    m = lcm(s.denominator, t.denominator)
    si, ti = int(s * m), int(t * m)
    g = gcd(si, ti)
    si, ti = si // g, ti // g
    if si < 0 or (si == 0 and ti < 0):
        si, ti = -si, -ti
    return (Fraction(si), Fraction(ti))


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def hypothesis_failures(omega, a, b, daa: Fraction | None = None, dbb: Fraction | None = None) -> dict:
    """Map each of "B1", "B2" that fails to a list of reasons."""
    omega = list(omega)
    common = [f"omega item {k} not PSD" for k, A in enumerate(omega) if not is_psd(A).psd]
    if not is_psd(a).psd:
        common.append("a not PSD")
    if daa is None:
        daa = mixed_disc(omega + [a, a])
    if dbb is None:
        dbb = mixed_disc(omega + [b, b])
    out = {}
    b1 = list(common)
    if dbb < 0:
        b1.append(f"D(omega,b,b) = {_fmt(dbb)} < 0")
    b2 = list(common)
    if daa <= 0:
        b2.append(f"D(omega,a,a) = {_fmt(daa)}" + (" < 0" if daa < 0 else ""))
    if b1:
        out["B1"] = b1
    if b2:
        out["B2"] = b2
    return out


class AlexandrovResult(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool


def alexandrov_verify(omega: Sequence[HermitianMatrix], a: HermitianMatrix, b: HermitianMatrix) -> AlexandrovResult:
    """Evaluate D(Ω,a,b)^2 >= D(Ω,a,a) D(Ω,b,b); Ω and a must be PSD."""
    q = EqualityQuery(tuple(omega), a, b)
    for k, A in enumerate(q.omega):
        if not is_psd(A).psd:
            raise HypothesisError(f"omega item {k} is not positive semidefinite")
    if not is_psd(a).psd:
        raise HypothesisError("a is not positive semidefinite")
    om = list(q.omega)
    dab = mixed_disc(om + [a, b])
    lhs = dab * dab
    rhs = mixed_disc(om + [a, a]) * mixed_disc(om + [b, b])
    return AlexandrovResult(lhs, rhs, lhs >= rhs)


def classify_equality(q: EqualityQuery) -> Verdict:
    om = list(q.omega)
    daa = mixed_disc(om + [q.a, q.a])
    dab = mixed_disc(om + [q.a, q.b])
    dbb = mixed_disc(om + [q.b, q.b])
    lhs, rhs = dab * dab, daa * dbb
    failures = hypothesis_failures(om, q.a, q.b, daa, dbb)
    backed = False
    if q.mode is not Mode.UNCHECKED:
        key = q.mode.name
        if key in failures:
            return Verdict(
                Tag.HYPOTHESIS_VIOLATED, lhs, rhs, flags={key: failures[key]}, detail="; ".join(failures[key])
            )
        backed = True
    if lhs != rhs:
        if backed and lhs < rhs:
            return Verdict(
                Tag.THEOREM_VIOLATION, lhs, rhs, gap=lhs - rhs, detail="Alexandrov inequality fails under hypothesis"
            )
        return Verdict(Tag.STRICT, lhs, rhs, gap=lhs - rhs)
    fa = functional(om, q.a)
    fb = functional(om, q.b)
    w = proportionality_witness(fa.coeffs, fb.coeffs)
    if w is not None:
        return Verdict(Tag.EQ_PROPORTIONAL, lhs, rhs, gap=Fraction(0), witness=w)
    if backed:
        return Verdict(
            Tag.THEOREM_VIOLATION,
            lhs,
            rhs,
            gap=Fraction(0),
            detail=f"equality under {q.mode.name} but functionals are not proportional",
        )
    return Verdict(Tag.EQ_NONPROPORTIONAL, lhs, rhs, gap=Fraction(0), flags=failures)


def matrices_proportional(a: HermitianMatrix, b: HermitianMatrix) -> bool:
    return proportionality_witness(decompose_in_basis(a), decompose_in_basis(b)) is not None


@dataclass(frozen=True)
class KTReport:
    verdict: Verdict
    matrix_proportional: bool
    hodge_index: str  # hodge_index_check(Ω, I) verdict


def kt_torus_verify(
    prefix: Sequence[tuple[HermitianMatrix, int]], alpha: HermitianMatrix, beta: HermitianMatrix
) -> KTReport:
    """Khovanskii-Teissier equality on a flat torus: prefix classes and α nef (PSD).

    Uses B1 when it holds, else B2, else reports unbacked.  When (Ω, I)
    satisfies the Hodge index theorem, A ↦ D(Ω, A, ·) is injective, so
    proportional functionals must come from proportional matrices; a
    mismatch there is reported as a TheoremViolation.
    """
    omega = expand_multi(prefix)
    n = alpha.n
    if len(omega) != n - 2:
        raise InputError(f"prefix multiplicities sum to {len(omega)}, expected n-2 = {n - 2}")
    for k, A in enumerate(omega):
        if not is_psd(A).psd:
            raise HypothesisError(f"prefix matrix {k} is not nef (PSD)")
    if not is_psd(alpha).psd:
        raise HypothesisError("alpha is not nef (PSD)")
    failures = hypothesis_failures(omega, alpha, beta)
    mode = Mode.B1 if "B1" not in failures else Mode.B2 if "B2" not in failures else Mode.UNCHECKED
    verdict = classify_equality(EqualityQuery(tuple(omega), alpha, beta, mode))
    mprop = matrices_proportional(alpha, beta)
    hit = hodge_index_check(omega, HermitianMatrix.identity(n)).verdict
    if verdict.tag is Tag.EQ_PROPORTIONAL and hit == SATISFIES_HIT and not mprop:
        verdict = Verdict(
            Tag.THEOREM_VIOLATION,
            verdict.lhs,
            verdict.rhs,
            gap=verdict.gap,
            witness=verdict.witness,
            detail="Hodge index holds for (Ω, I) yet proportional functionals come from non-proportional classes",
        )
    return KTReport(verdict, mprop, hit)


@dataclass(frozen=True)
class SequenceReport:
    s: tuple[Fraction, ...]  # s_k = D(α^k, β^{n-k}), k = 0..n
    equality_positions: tuple[int, ...]
    log_concave: bool
    nondegenerate: bool
    end_proportional: bool | None = None
    witness: tuple[Fraction, Fraction] | None = None

    @property
    def chain_complete(self) -> bool:
        return len(self.equality_positions) == len(self.s) - 2

    @property
    def violation(self) -> bool:
        if not self.log_concave:
            return True
        return self.chain_complete and self.nondegenerate and not self.end_proportional


def sk_chain(alpha: HermitianMatrix, beta: HermitianMatrix) -> SequenceReport:
    n = alpha.n
    if beta.n != n:
        raise InputError("alpha and beta have different dimensions")
    if not is_psd(alpha).psd:
        raise HypothesisError("alpha is not PSD")
    if not is_psd(beta).psd:
        raise HypothesisError("beta is not PSD")
    s = tuple(mixed_disc([alpha] * k + [beta] * (n - k)) for k in range(n + 1))
    eq = tuple(k for k in range(1, n) if s[k] * s[k] == s[k - 1] * s[k + 1])
    logc = all(s[k] * s[k] >= s[k - 1] * s[k + 1] for k in range(1, n))
    nondeg = True
    if n >= 2:
        for k in range(n):
            mats = [alpha] * k + [beta] * (n - k - 1)
            if functional(mats[:-1], mats[-1]).is_zero():
                nondeg = False
                break
    rep = SequenceReport(s, eq, logc, nondeg)
    if n >= 2 and rep.chain_complete and nondeg:
        fa = functional([alpha] * (n - 2), alpha)
        fb = functional([beta] * (n - 2), beta)
        w = proportionality_witness(fa.coeffs, fb.coeffs)
        rep = SequenceReport(s, eq, logc, nondeg, w is not None, w)
    return rep


def counterexample_generate(n: int, a: HermitianMatrix | None = None) -> tuple[EqualityQuery, Verdict]:
    """Linear shadow of the optimality example.

    Ω = (I, ..., I), a rank-1 PSD (E_11 by default), b a nonzero solution
    of D(Ω, a, ·) = D(Ω, I, ·) = 0.  Then D(Ω, a, a) = 0 and D(Ω, a, b) = 0
    give equality, while the Hodge index theorem forces D(Ω, b, b) < 0,
    so the functionals cannot be proportional and both B1 and B2 fail.
    """
    if n < 2:
        raise InputError("counterexample needs n >= 2")
    I = HermitianMatrix.identity(n)
    if a is None:
        a = HermitianMatrix.unit(n, 0)
    omega = (I,) * (n - 2)
    rows = [list(functional(omega, a).coeffs), list(functional(omega, I).coeffs)]
    ker = nullspace(rows)
    b = recompose(ker[0], n)
    q = EqualityQuery(omega, a, b, Mode.UNCHECKED)
    return q, classify_equality(q)
