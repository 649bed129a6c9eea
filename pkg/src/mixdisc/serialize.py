"""JSON wire format.

Rationals are strings "p/q" (or "p" when q = 1) in lowest terms; Gaussian
rationals are {"re": <rational>, "im": <rational>}; Hermitian matrices are
{"n": <int>, "entries": [[<gaussian>, ...], ...]} with every entry present.
Readers validate the Hermitian invariant.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .errors import InputError
from .exact import GaussianRational, HermitianMatrix, as_rational
from .linalg import Signature


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, float):
        raise InputError(f"binary float {x!r} is not accepted; use a string such as \"1/3\"")
    return as_rational(x)


def gaussian_to_json(z: GaussianRational) -> dict:
    return {"re": format_rational(z.re), "im": format_rational(z.im)}


def parse_gaussian(x) -> GaussianRational:
    if isinstance(x, dict):
        extra = set(x) - {"re", "im"}
        if extra:
            raise InputError(f"unexpected keys in gaussian rational: {sorted(extra)}")
        return GaussianRational(parse_rational(x.get("re", 0)), parse_rational(x.get("im", 0)))
    return GaussianRational(parse_rational(x), 0)


def matrix_to_json(A: HermitianMatrix) -> dict:
    return {"n": A.n, "entries": [[gaussian_to_json(z) for z in r] for r in A.entries]}


def parse_matrix(x, n: int | None = None) -> HermitianMatrix:
    """Accepts {"n", "entries"} or a bare list of rows."""
    declared = None
    if isinstance(x, dict):
        if "entries" not in x:
            raise InputError("matrix object needs an 'entries' field")
        declared = x.get("n")
        rows = x["entries"]
    else:
        rows = x
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix entries must be a list of rows")
    A = HermitianMatrix([[parse_gaussian(z) for z in r] for r in rows])
    if declared is not None and declared != A.n:
        raise InputError(f"declared n={declared} but entries are {A.n}x{A.n}")
    if n is not None and A.n != n:
        raise InputError(f"dimension mismatch: expected n={n}, got {A.n}")
    return A


def parse_matrix_list(xs, n: int | None = None) -> list[HermitianMatrix]:
    if not isinstance(xs, list):
        raise InputError("expected a list of matrices")
    return [parse_matrix(x, n) for x in xs]


def vector_to_json(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def signature_to_json(s: Signature) -> dict:
    return s.to_json()


def loads(text: str) -> Any:
    """json.loads with decimal literals read exactly as Fractions."""
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def verdict_to_json(v) -> dict:
    """Tagged object for a teissier.Verdict."""
    out: dict[str, Any] = {"verdict": v.tag.value}
    for key in ("lhs", "rhs", "gap"):
        val = getattr(v, key)
        if val is not None:
            out[key] = format_rational(val)
    out["witness"] = None if v.witness is None else vector_to_json(v.witness)
    if v.flags:
        out["flags"] = {k: list(reasons) for k, reasons in v.flags.items()}
    if v.detail:
        out["detail"] = v.detail
    return out
