"""Seeded random instances and batch property suites.

Every trial draws from its own SplitMix64 stream seeded with
mix(seed ^ trial_index), so a trial's instance does not depend on which
trials ran before it, or on whether trials ran in parallel.  Reports are
merged in trial order and serialize byte-identically for a fixed config
(wall-clock timings are kept out of the JSON unless asked for).
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .errors import InputError, PreconditionError
from .exact import (
    GaussianRational,
    HermitianMatrix,
    conj_transpose,
    matmul,
    recompose,
)
from .hodge import (
    INDEFINITE,
    SATISFIES_HIT,
    functional,
    gram,
    hodge_index_check,
    lefschetz,
    zero_vector_check,
)
from .linalg import Signature, nullspace
from .mixed import ORACLE_CAP, mixed_disc, mixed_disc_oracle
from .positivity import is_psd
from .serialize import format_rational, matrix_to_json
from .teissier import (
    EqualityQuery,
    Mode,
    Tag,
    alexandrov_verify,
    classify_equality,
    counterexample_generate,
    sk_chain,
)

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in [0, k), by rejection."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def rational(self, bound: int, nonzero: bool = False) -> Fraction:
        while True:
            q = Fraction(self.randint(-bound, bound), self.randint(1, bound))
            if q or not nonzero:
                return q

    def gaussian(self, bound: int) -> GaussianRational:
        return GaussianRational(self.rational(bound), self.rational(bound))


def trial_seed(seed: int, index: int) -> int:
    return SplitMix64((seed ^ index) & MASK64).next_u64()


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    rank_profile: tuple[int, ...] | None = None
    entry_bound: int = 10
    trials: int = 100

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be >= 1")
        if not 0 <= self.seed <= MASK64:
            raise InputError("seed must be an unsigned 64-bit integer")
        if self.entry_bound < 1:
            raise InputError("entry_bound must be positive")
        if self.trials < 0:
            raise InputError("trials must be >= 0")
        if self.rank_profile is None:
            object.__setattr__(self, "rank_profile", tuple(range(self.n, 0, -1)))
        else:
            object.__setattr__(self, "rank_profile", tuple(self.rank_profile))
        if not self.rank_profile or any(not 0 <= r <= self.n for r in self.rank_profile):
            raise InputError(f"rank profile entries must lie in [0, {self.n}]")

    def rng(self, trial_index: int) -> SplitMix64:
        return SplitMix64(trial_seed(self.seed, trial_index))


def gen_hermitian(rng: SplitMix64, n: int, bound: int = 10) -> HermitianMatrix:
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(rng.rational(bound))
        for j in range(i + 1, n):
            z = rng.gaussian(bound)
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return HermitianMatrix(rows, check=False)


def gen_psd(rng: SplitMix64, n: int, r: int, bound: int = 10) -> HermitianMatrix:
    """L L^H for a random n x r matrix L; PD (regenerated if needed) when r = n."""
    if not 0 <= r <= n:
        raise InputError(f"rank must lie in [0, {n}]")
    if r == 0:
        return HermitianMatrix.zero(n)
    while True:
        L = [[rng.gaussian(bound) for _ in range(r)] for _ in range(n)]
        A = HermitianMatrix(matmul(L, conj_transpose(L)), check=False)
        rep = is_psd(A)
        assert rep.psd and rep.rank <= r
        if r < n or rep.pd:
            return A


@dataclass
class TrialReport:
    trial_index: int
    instance: dict
    verdict: str
    violation: bool
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "trial_index": self.trial_index,
            "instance": self.instance,
            "verdict": self.verdict,
            "violation": self.violation,
            "detail": self.detail,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _instance(n: int, **parts) -> dict:
    payload = {}
    ranks = {}
    for name, val in parts.items():
        mats = val if isinstance(val, (list, tuple)) else [val]
        payload[name] = [matrix_to_json(A) for A in mats]
        ranks[name] = [is_psd(A).rank for A in mats]
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return {"hash": hashlib.sha256(blob).hexdigest()[:16], "n": n, "ranks": ranks}


def _ranked_psd(rng, cfg: GeneratorConfig, count: int) -> list[HermitianMatrix]:
    return [gen_psd(rng, cfg.n, rng.choice(cfg.rank_profile), cfg.entry_bound) for _ in range(count)]


def _random_combination(rng, vectors, bound) -> list[Fraction]:
    N = len(vectors[0])
    out = [Fraction(0)] * N
    for v in vectors:
        c = rng.rational(bound, nonzero=True)
        for t in range(N):
            out[t] += c * v[t]
    return out


# -- suites -----------------------------------------------------------------
# Each returns (instance dict, verdict string, violation flag, detail dict).


def _suite_oracle(rng, cfg):
    if cfg.n > ORACLE_CAP:
        raise InputError(f"mixed-disc-oracle suite is capped at n <= {ORACLE_CAP}")
    mats = [gen_hermitian(rng, cfg.n, cfg.entry_bound) for _ in range(cfg.n)]
    fast, slow = mixed_disc(mats), mixed_disc_oracle(mats)
    ok = fast == slow
    return _instance(cfg.n, matrices=mats), "agree" if ok else "disagree", not ok, {"D": format_rational(fast)}


def _suite_alexandrov(rng, cfg):
    _need_n2(cfg)
    omega = _ranked_psd(rng, cfg, cfg.n - 2)
    (a,) = _ranked_psd(rng, cfg, 1)
    b = gen_hermitian(rng, cfg.n, cfg.entry_bound)
    res = alexandrov_verify(omega, a, b)
    verdict = "equality" if res.lhs == res.rhs else "strict" if res.holds else "violated"
    return (
        _instance(cfg.n, omega=omega, a=a, b=b),
        verdict,
        not res.holds,
        {"lhs": format_rational(res.lhs), "rhs": format_rational(res.rhs)},
    )


_STRATEGIES = ("proportional", "kernel-shift", "null-primitive", "random")


def _equality_seeking(rng, cfg, mode: Mode):
    _need_n2(cfg)
    n, bound = cfg.n, cfg.entry_bound
    omega = _ranked_psd(rng, cfg, n - 2)
    (a,) = _ranked_psd(rng, cfg, 1)
    if mode is Mode.B2 and mixed_disc(omega + [a, a]) <= 0:
        a = gen_psd(rng, n, n, bound)
    strategy = rng.choice(_STRATEGIES)
    lam = rng.rational(bound, nonzero=True)
    if mode is Mode.B1 and strategy in ("proportional", "kernel-shift"):
        lam = abs(lam)
    b = None
    if strategy == "kernel-shift":
        ker = nullspace([list(r) for r in gram(omega, n).entries])
        if ker:
            b = a.scale(lam) + recompose(_random_combination(rng, ker, bound), n)
    elif strategy == "null-primitive":
        res = hodge_index_check(omega, a)
        if res.kernel:
            b = recompose(_random_combination(rng, list(res.kernel), bound), n)
    elif strategy == "random":
        b = gen_psd(rng, n, rng.choice(cfg.rank_profile), bound) if mode is Mode.B1 else gen_hermitian(rng, n, bound)
    if b is None:
        strategy += "(fallback:proportional)"
        b = a.scale(lam)
    v = classify_equality(EqualityQuery(tuple(omega), a, b, mode))
    detail = {"strategy": strategy, "b_psd": is_psd(b).psd, "equality": v.lhs == v.rhs}
    if v.witness is not None:
        detail["witness"] = [format_rational(x) for x in v.witness]
    return _instance(n, omega=omega, a=a, b=b), v.tag.value, v.is_violation, detail


def _suite_b1(rng, cfg):
    return _equality_seeking(rng, cfg, Mode.B1)


def _suite_b2(rng, cfg):
    return _equality_seeking(rng, cfg, Mode.B2)


def _suite_hodge_index(rng, cfg):
    _need_n2(cfg)
    n = cfg.n
    omega = [gen_psd(rng, n, n, cfg.entry_bound) for _ in range(n - 2)]
    eta = gen_psd(rng, n, n, cfg.entry_bound)
    g = gram(omega, n)
    res = hodge_index_check(omega, eta, g)
    full = g.signature()
    ok = (
        res.verdict == SATISFIES_HIT
        and res.signature == Signature(0, 0, n * n - 1)
        and full == Signature(1, 0, n * n - 1)
    )
    detail = {"restricted": res.signature.to_json(), "full": full.to_json()}
    return _instance(n, omega=omega, eta=eta), res.verdict, not ok, detail


def _psd_pair(rng, cfg):
    _need_n2(cfg)
    omega = _ranked_psd(rng, cfg, cfg.n - 2)
    (eta,) = _ranked_psd(rng, cfg, 1)
    return omega, eta


def _suite_semi_negativity(rng, cfg):
    omega, eta = _psd_pair(rng, cfg)
    inst = _instance(cfg.n, omega=omega, eta=eta)
    if functional(omega, eta).is_zero():
        return inst, "skipped:zero-functional", False, {}
    res = hodge_index_check(omega, eta)
    return inst, res.verdict, res.signature.positive > 0, {"restricted": res.signature.to_json()}


def _suite_zero_eigenvector(rng, cfg):
    omega, eta = _psd_pair(rng, cfg)
    inst = _instance(cfg.n, omega=omega, eta=eta)
    if functional(omega, eta).is_zero():
        return inst, "skipped:zero-functional", False, {}
    if mixed_disc(omega + [eta, eta]) == 0:
        return inst, "skipped:D(omega,eta,eta)=0", False, {}
    res = hodge_index_check(omega, eta)
    if res.verdict == INDEFINITE:
        return inst, res.verdict, True, {"restricted": res.signature.to_json()}
    failures = 0
    for v in res.kernel:
        if not zero_vector_check(omega, eta, recompose(v, cfg.n)):
            failures += 1
    verdict = "null-directions-checked" if res.kernel else "no-null-directions"
    return inst, verdict, failures > 0, {"null_directions": len(res.kernel), "failures": failures}


def _suite_lefschetz(rng, cfg):
    omega, eta = _psd_pair(rng, cfg)
    beta = gen_hermitian(rng, cfg.n, cfg.entry_bound)
    inst = _instance(cfg.n, omega=omega, eta=eta, beta=beta)
    if mixed_disc(omega + [eta, eta]) == 0:
        eta = gen_psd(rng, cfg.n, cfg.n, cfg.entry_bound)
        inst = _instance(cfg.n, omega=omega, eta=eta, beta=beta)
    try:
        c, gamma = lefschetz(omega, eta, beta)
    except PreconditionError:
        return inst, "skipped:D(omega,eta,eta)=0", False, {}
    ok = (
        eta.scale(c) + gamma == beta
        and functional(omega, eta)(gamma) == 0
        and mixed_disc(omega + [eta, gamma]) == 0
    )
    return inst, "decomposed" if ok else "failed", not ok, {"c": format_rational(c)}


def _suite_sk_chain(rng, cfg):
    n, bound = cfg.n, cfg.entry_bound
    (alpha,) = _ranked_psd(rng, cfg, 1)
    proportional = rng.below(2) == 0
    if proportional:
        beta = alpha.scale(abs(rng.rational(bound, nonzero=True)))
    else:
        (beta,) = _ranked_psd(rng, cfg, 1)
    rep = sk_chain(alpha, beta)
    bad = rep.violation or (proportional and not rep.chain_complete)
    verdict = "chain-complete" if rep.chain_complete else "strict-somewhere"
    detail = {
        "proportional_input": proportional,
        "s": [format_rational(x) for x in rep.s],
        "nondegenerate": rep.nondegenerate,
        "end_proportional": rep.end_proportional,
    }
    return _instance(n, alpha=alpha, beta=beta), verdict, bad, detail


def _suite_counterexample(rng, cfg):
    n = cfg.n
    if n < 2:
        raise InputError("counterexample suite needs n >= 2")
    a = None if rng.below(4) == 0 else gen_psd(rng, n, 1, cfg.entry_bound)
    q, v = counterexample_generate(n, a)
    dbb = mixed_disc(list(q.omega) + [q.b, q.b])
    ok = (
        v.tag is Tag.EQ_NONPROPORTIONAL
        and v.lhs == v.rhs
        and dbb < 0
        and "B1" in v.flags
        and "B2" in v.flags
    )
    return _instance(n, a=q.a, b=q.b), v.tag.value, not ok, {"D(omega,b,b)": format_rational(dbb)}


def _need_n2(cfg):
    if cfg.n < 2:
        raise InputError("this suite needs n >= 2")


SUITES: dict[str, Callable] = {
    "mixed-disc-oracle": _suite_oracle,
    "alexandrov": _suite_alexandrov,
    "classify-b1": _suite_b1,
    "classify-b2": _suite_b2,
    "hodge-index": _suite_hodge_index,
    "semi-negativity": _suite_semi_negativity,
    "zero-eigenvector": _suite_zero_eigenvector,
    "lefschetz": _suite_lefschetz,
    "sk-chain": _suite_sk_chain,
    "counterexample": _suite_counterexample,
}


def run_trial(suite: str, cfg: GeneratorConfig, index: int) -> TrialReport:
    fn = SUITES[suite]
    t0 = time.perf_counter()
    inst, verdict, violation, detail = fn(cfg.rng(index), cfg)
    return TrialReport(index, inst, verdict, violation, time.perf_counter() - t0, detail)


def _run_trial_args(args):
    return run_trial(*args)


@dataclass
class SuiteResult:
    suite: str
    config: GeneratorConfig
    reports: list[TrialReport]

    @property
    def violations(self) -> int:
        return sum(r.violation for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def summary(self) -> dict[str, Any]:
        counts: dict[str, int] = {}
        for r in self.reports:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        first = next((r for r in self.reports if r.violation), None)
        return {
            "suite": self.suite,
            "n": self.config.n,
            "seed": self.config.seed,
            "trials": self.config.trials,
            "entry_bound": self.config.entry_bound,
            "rank_profile": list(self.config.rank_profile),
            "verdicts": dict(sorted(counts.items())),
            "violations": self.violations,
            "first_violation": None if first is None else first.to_json(),
        }

    def to_json(self, trials: bool = True, timings: bool = False) -> dict:
        out: dict[str, Any] = {"summary": self.summary()}
        if trials:
            out["trials"] = [r.to_json(timings) for r in self.reports]
        return out


def run_suite(suite: str, cfg: GeneratorConfig, jobs: int = 1) -> SuiteResult:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if jobs > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_run_trial_args, [(suite, cfg, i) for i in range(cfg.trials)], chunksize=8))
    else:
        reports = [run_trial(suite, cfg, i) for i in range(cfg.trials)]
    return SuiteResult(suite, cfg, reports)
