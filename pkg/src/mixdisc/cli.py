"""Command-line front end: one subcommand per operation, JSON in and out.

Exit codes: 0 success, 1 a theorem violation was found, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from . import __version__
from .errors import InputError, MixdiscError
from .exact import HermitianMatrix
from .harness import SUITES, GeneratorConfig, run_suite
from .hodge import functional, gram, hodge_index_check, lefschetz, primitive_space
from .mixed import NORMALIZATION, mixed_disc
from .positivity import ConeQuery, cone_gamma_membership, is_psd, m_positivity_check
from .serialize import (
    dumps,
    format_rational,
    loads,
    matrix_to_json,
    parse_matrix,
    parse_matrix_list,
    vector_to_json,
    verdict_to_json,
)
from .teissier import (
    EqualityQuery,
    Mode,
    Tag,
    alexandrov_verify,
    classify_equality,
    counterexample_generate,
    kt_torus_verify,
    sk_chain,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class Violation(Exception):
    """Carries a computed result that falsifies a theorem (exit code 1)."""

    def __init__(self, result):
        super().__init__("theorem violation")
        self.result = result


def _obj(data, *keys: str) -> dict:
    if not isinstance(data, dict):
        raise InputError("request body must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InputError(f"missing field(s): {', '.join(missing)}")
    return data


def _omega(data: dict, n: int | None) -> list[HermitianMatrix]:
    if n is None and data.get("n") is not None:
        n = data["n"]
    return parse_matrix_list(data.get("omega", []), n)


# -- handlers: (args, request) -> result ------------------------------------


def cmd_mixed_disc(args, data):
    data = _obj(data, "matrices")
    mats = parse_matrix_list(data["matrices"], data.get("n"))
    if data.get("n") is not None and len(mats) != data["n"]:
        raise InputError(f"tuple for n={data['n']} needs {data['n']} matrices, got {len(mats)}")
    return format_rational(mixed_disc(mats))


def cmd_gram(args, data):
    data = _obj(data)
    omega = _omega(data, None)
    n = data.get("n") or (omega[0].n if omega else None)
    g = gram(omega, n)
    return {
        "n": g.n,
        "gram": [vector_to_json(r) for r in g.entries],
        "signature": g.signature().to_json(),
    }


def cmd_primitive(args, data):
    data = _obj(data, "eta")
    eta = parse_matrix(data["eta"])
    sub = primitive_space(_omega(data, eta.n), eta)
    return {
        "dimension": sub.dimension,
        "functional": vector_to_json(functional(_omega(data, eta.n), eta).coeffs),
        "vectors": [vector_to_json(v) for v in sub.basis_vectors],
        "matrices": [matrix_to_json(A) for A in sub.matrices()],
    }


def cmd_hodge_index(args, data):
    data = _obj(data, "eta")
    eta = parse_matrix(data["eta"])
    res = hodge_index_check(_omega(data, eta.n), eta)
    out: dict[str, Any] = {
        "verdict": res.verdict,
        "signature": res.signature.to_json(),
        "primitive_dimension": res.primitive_dimension,
        "witness": None if res.witness is None else vector_to_json(res.witness),
    }
    if res.kernel:
        out["kernel"] = [vector_to_json(v) for v in res.kernel]
    return out


def cmd_lefschetz(args, data):
    data = _obj(data, "eta", "beta")
    eta = parse_matrix(data["eta"])
    beta = parse_matrix(data["beta"], eta.n)
    c, gamma = lefschetz(_omega(data, eta.n), eta, beta)
    return {"c": format_rational(c), "gamma": matrix_to_json(gamma)}


def cmd_psd_check(args, data):
    A = parse_matrix(data["matrix"] if isinstance(data, dict) and "matrix" in data else data)
    rep = is_psd(A)
    return {
        "kind": rep.kind,
        "rank": rep.rank,
        "coefficients": vector_to_json(rep.coefficients),
        "failing_index": rep.failing_index,
    }


def cmd_cone_check(args, data):
    data = _obj(data, "m", "alpha")
    alpha = parse_matrix(data["alpha"])
    eta = parse_matrix(data["eta"], alpha.n) if data.get("eta") is not None else None
    q = ConeQuery(int(data["m"]), tuple(parse_matrix_list(data.get("kaehler", []), alpha.n)), alpha, eta)
    mp = m_positivity_check(q)
    return {
        "membership": cone_gamma_membership(q).value,
        "values": vector_to_json(mp.values),
        "positive": mp.positive,
        "fails_at": mp.fails_at,
        "fail_value": None if mp.fails_at is None else format_rational(mp.values[mp.fails_at - 1]),
    }


def _query(data, mode: Mode) -> EqualityQuery:
    data = _obj(data, "a", "b")
    a = parse_matrix(data["a"])
    b = parse_matrix(data["b"], a.n)
    return EqualityQuery(tuple(_omega(data, a.n)), a, b, mode)


def cmd_alexandrov(args, data):
    q = _query(data, Mode.UNCHECKED)
    res = alexandrov_verify(q.omega, q.a, q.b)
    out = {"lhs": format_rational(res.lhs), "rhs": format_rational(res.rhs), "holds": res.holds}
    if not res.holds:
        raise Violation(out)
    return out


def cmd_classify(args, data):
    v = classify_equality(_query(data, Mode(args.mode)))
    out = verdict_to_json(v)
    if v.is_violation:
        raise Violation(out)
    return out


def cmd_kt_verify(args, data):
    data = _obj(data, "prefix", "alpha", "beta")
    alpha = parse_matrix(data["alpha"])
    beta = parse_matrix(data["beta"], alpha.n)
    prefix = []
    for item in data["prefix"]:
        item = _obj(item, "matrix", "multiplicity")
        prefix.append((parse_matrix(item["matrix"], alpha.n), int(item["multiplicity"])))
    rep = kt_torus_verify(prefix, alpha, beta)
    out = {
        "result": verdict_to_json(rep.verdict),
        "matrix_proportional": rep.matrix_proportional,
        "hodge_index": rep.hodge_index,
    }
    if rep.verdict.is_violation:
        raise Violation(out)
    return out


def cmd_sk_chain(args, data):
    data = _obj(data, "alpha", "beta")
    alpha = parse_matrix(data["alpha"])
    rep = sk_chain(alpha, parse_matrix(data["beta"], alpha.n))
    out = {
        "s": vector_to_json(rep.s),
        "equality_positions": list(rep.equality_positions),
        "log_concave": rep.log_concave,
        "chain_complete": rep.chain_complete,
        "nondegenerate": rep.nondegenerate,
        "end_proportional": rep.end_proportional,
        "witness": None if rep.witness is None else vector_to_json(rep.witness),
    }
    if rep.violation:
        raise Violation(out)
    return out


def cmd_counterexample(args, data):
    q, v = counterexample_generate(args.n)
    out = {
        "query": {
            "n": q.n,
            "omega": [matrix_to_json(A) for A in q.omega],
            "a": matrix_to_json(q.a),
            "b": matrix_to_json(q.b),
            "mode": q.mode.value,
        },
        "verdict": verdict_to_json(v),
        "D(omega,b,b)": format_rational(mixed_disc(list(q.omega) + [q.b, q.b])),
    }
    if v.tag is not Tag.EQ_NONPROPORTIONAL:
        raise Violation(out)
    return out


def cmd_fuzz(args, data):
    profile = None
    if args.rank_profile:
        try:
            profile = tuple(int(x) for x in args.rank_profile.split(","))
        except ValueError as exc:
            raise InputError(f"bad --rank-profile {args.rank_profile!r}") from exc
    cfg = GeneratorConfig(
        n=args.n, seed=args.seed, rank_profile=profile, entry_bound=args.entry_bound, trials=args.trials
    )
    res = run_suite(args.suite, cfg, jobs=args.jobs)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps(res.to_json(trials=True, timings=args.timings), pretty=True))
            fh.write("\n")
    out = res.summary()
    if res.violations:
        raise Violation(out)
    return out


# name -> (handler, reads input)
COMMANDS: dict[str, tuple[Callable, bool]] = {
    "mixed-disc": (cmd_mixed_disc, True),
    "gram": (cmd_gram, True),
    "primitive": (cmd_primitive, True),
    "hodge-index": (cmd_hodge_index, True),
    "lefschetz": (cmd_lefschetz, True),
    "psd-check": (cmd_psd_check, True),
    "cone-check": (cmd_cone_check, True),
    "alexandrov": (cmd_alexandrov, True),
    "classify": (cmd_classify, True),
    "kt-verify": (cmd_kt_verify, True),
    "sk-chain": (cmd_sk_chain, True),
    "counterexample": (cmd_counterexample, False),
    "fuzz": (cmd_fuzz, False),
}


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="read the JSON request from this file (default: stdin)")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    ap = argparse.ArgumentParser(
        prog="mixdisc",
        description="Exact mixed discriminants and Alexandrov/Khovanskii-Teissier equality cases.",
    )
    ap.add_argument(
        "--version", action="version", version=f"mixdisc {__version__} (D normalization: {NORMALIZATION})"
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "mixed-disc":
            p.add_argument("--json", action="store_true", help="wrap the value in the JSON envelope")
        elif name == "classify":
            p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.UNCHECKED.value)
        elif name == "counterexample":
            p.add_argument("--n", type=int, required=True)
        elif name == "fuzz":
            p.add_argument("--suite", required=True, choices=sorted(SUITES))
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--seed", type=_u64, default=0)
            p.add_argument("--rank-profile", help="comma-separated target ranks, e.g. 3,2,1")
            p.add_argument("--entry-bound", type=int, default=10)
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--report", help="write the full per-trial JSON report to this file")
            p.add_argument("--timings", action="store_true", help="include wall-clock times in --report")
    return ap


def _read(args) -> Any:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    else:
        text = sys.stdin.read()
    return loads(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler, reads = COMMANDS[args.command]
    code = EXIT_OK
    try:
        data = _read(args) if reads else None
        result = handler(args, data)
        envelope: dict[str, Any] = {"ok": True, "result": result}
    except Violation as v:
        envelope, code = {"ok": True, "result": v.result, "violation": True}, EXIT_VIOLATION
    except (MixdiscError, KeyError, TypeError) as exc:
        kind = type(exc).__name__ if isinstance(exc, MixdiscError) else "InputError"
        envelope, code = {"ok": False, "error": {"type": kind, "message": str(exc)}}, EXIT_INPUT
    if args.command == "mixed-disc" and not args.json and code == EXIT_OK:
        print(envelope["result"])
    else:
        print(dumps(envelope, pretty=args.pretty))
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
