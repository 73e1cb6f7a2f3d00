"""Command-line entry point.

Exit codes: 0 on success or a passing verification, 1 when a verification
fails or stays indeterminate, 2 on usage or domain errors.  Numeric output
is locale-independent JSON/CSV with a schema_version field on structured
documents.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .intervals import (
    DomainError,
    Enclosure,
    Mode,
    PrecisionError,
    TermBudgetError,
)
from .lemma_functions import evaluate_named
from .power_series import RepresentationId, build_representation, identity_report
from .special_eval import (
    BoundsStatus,
    TheoremId,
    check_bounds,
    eval_F,
    eval_H,
    eval_T,
    eval_psi_q,
)
from .verifier import (
    LEMMA_VERIFIERS,
    SCHEMA_VERSION,
    combine_theorem_3_2,
    verify_lemma,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


def _mode_arg(value: str) -> Mode:
    try:
        return Mode(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"mode must be fast or certified, got {value!r}")


def _repr_arg(value: str) -> RepresentationId:
    try:
        return RepresentationId(value.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown representation {value!r}")


def _enclosure_json(enc: Enclosure) -> dict:
    lo, hi = enc.to_floats()
    return {"lo": lo, "hi": hi}


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divisor-series",
        description="Evaluate the divisor-function series T(q), its derived "
                    "functions, and run the certified verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="dump coefficients of one representation of T")
    p.add_argument("--repr", type=_repr_arg, default=RepresentationId.DIVISOR)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("identity-check", help="compare all representations against DIVISOR")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("eval", help="evaluate T, psi, H or F at a point")
    p.add_argument("--fn", choices=("T", "psi", "H", "F"), required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--x", default="1", help="argument of psi (default 1)")
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--mode", type=_mode_arg, default=Mode.FAST)
    p.add_argument("--repr", type=_repr_arg, default=RepresentationId.CLAUSEN)

    p = sub.add_parser("lemma-fn", help="evaluate one named auxiliary function")
    p.add_argument("--name", required=True)
    p.add_argument("--q")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--n", type=int)
    p.add_argument("--mode", type=_mode_arg, default=Mode.FAST)

    p = sub.add_parser("bounds-scan", help="scan a double inequality over a q grid")
    p.add_argument("--theorem", required=True,
                   choices=[t.value for t in TheoremId])
    p.add_argument("--grid-start", default="0.01")
    p.add_argument("--grid-end", default="0.99")
    p.add_argument("--grid-step", default="0.01")
    p.add_argument("--mode", type=_mode_arg, default=Mode.CERTIFIED)
    p.add_argument("--eps", type=float, default=None)

    p = sub.add_parser("verify", help="run a lemma verification and emit a certificate")
    p.add_argument("--lemma", required=True,
                   choices=sorted(LEMMA_VERIFIERS) + ["thm3.2"])
    p.add_argument("--mode", type=_mode_arg, default=Mode.CERTIFIED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="write the certificate JSON here")

    p = sub.add_parser("report", help="run the full verification suite")
    p.add_argument("--order", type=int, default=200)
    p.add_argument("--skip", action="append", default=[],
                   choices=("identities", "verify", "bounds"))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)

    return parser


def _cmd_coeffs(args) -> int:
    series = build_representation(args.repr, args.order)
    if args.format == "json":
        _print_json({
            "schema_version": SCHEMA_VERSION,
            "representation": args.repr.value,
            "order": args.order,
            "coefficients": [str(c) for c in series.coeffs],
        })
    else:
        print("index,coefficient")
        for k, c in enumerate(series.coeffs):
            print(f"{k},{c}")
    return EXIT_OK


def _cmd_identity_check(args) -> int:
    report = identity_report(args.order)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "order": args.order,
        "reference": RepresentationId.DIVISOR.value,
        "results": {
            rep.value: {
                "match": res.match,
                "first_mismatch_index": res.first_mismatch_index,
            }
            for rep, res in report.items()
        },
    }
    _print_json(doc)
    return EXIT_OK if all(r.match for r in report.values()) else EXIT_VERIFICATION_FAILED


def _cmd_eval(args) -> int:
    if args.fn == "T":
        rep = eval_T(args.q, args.eps, args.repr, args.mode)
    elif args.fn == "psi":
        rep = eval_psi_q(args.q, Fraction(args.x), args.eps, args.mode)
    elif args.fn == "H":
        rep = eval_H(args.q, args.eps, args.repr, args.mode)
    else:
        rep = eval_F(args.q, args.eps, args.repr, args.mode)
    lo, hi = rep.value.to_floats()
    _print_json({
        "schema_version": SCHEMA_VERSION,
        "fn": args.fn,
        "q": args.q,
        "lo": lo,
        "hi": hi,
        "terms": rep.terms_used,
        "tail_bound": rep.tail_bound,
        "mode": rep.mode.value,
        "representation": rep.representation.value
        if isinstance(rep.representation, RepresentationId) else rep.representation,
    })
    return EXIT_OK


def _cmd_lemma_fn(args) -> int:
    value = evaluate_named(args.name, q=args.q, x=args.x, y=args.y, n=args.n,
                           mode=args.mode)
    if isinstance(value, Enclosure):
        lo, hi = value.to_floats()
        _print_json({"schema_version": SCHEMA_VERSION, "name": args.name,
                     "lo": lo, "hi": hi, "mode": args.mode.value})
    else:
        _print_json({"schema_version": SCHEMA_VERSION, "name": args.name,
                     "value": value, "mode": args.mode.value})
    return EXIT_OK


def _scan_rows(theorem: TheoremId, start: Fraction, end: Fraction, step: Fraction,
               mode: Mode, eps):
    rows = []
    q = start
    points = []
    while q <= end:
        points.append(q)
        q += step
    for i, q in enumerate(points):
        if theorem is TheoremId.C3_3:
            if i + 1 >= len(points):
                break
            result = check_bounds(theorem, pair=(q, points[i + 1]), mode=mode, eps=eps)
        else:
            result = check_bounds(theorem, q=q, mode=mode, eps=eps)
        lhs, mid, rhs = result.lhs.to_floats(), result.mid.to_floats(), result.rhs.to_floats()
        rows.append((float(q), *lhs, *mid, *rhs, result.status.value))
    return rows


def _cmd_bounds_scan(args) -> int:
    theorem = TheoremId(args.theorem)
    rows = _scan_rows(theorem, Fraction(args.grid_start), Fraction(args.grid_end),
                      Fraction(args.grid_step), args.mode, args.eps)
    print("q,lhs_lo,lhs_hi,mid_lo,mid_hi,rhs_lo,rhs_hi,status")
    all_pass = True
    for row in rows:
        print(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
        if row[-1] != BoundsStatus.PASS.value:
            all_pass = False
    return EXIT_OK if all_pass else EXIT_VERIFICATION_FAILED


def _cmd_verify(args) -> int:
    if args.lemma == "thm3.2":
        certs = {lid: verify_lemma(lid, args.mode, args.jobs) for lid in LEMMA_VERIFIERS}
        cert = combine_theorem_3_2(certs)
    else:
        cert = verify_lemma(args.lemma, args.mode, args.jobs)
    text = cert.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(text, end="")
    return EXIT_OK if cert.passed else EXIT_VERIFICATION_FAILED


def _cmd_report(args) -> int:
    doc = {"schema_version": SCHEMA_VERSION, "sections": {}, "timings_s": {}}
    overall_ok = True

    if "identities" not in args.skip:
        t0 = time.perf_counter()
        rep = identity_report(args.order)
        ok = all(r.match for r in rep.values())
        doc["sections"]["identities"] = {
            "order": args.order,
            "all_match": ok,
            "results": {r.value: m.match for r, m in rep.items()},
        }
        doc["timings_s"]["identities"] = round(time.perf_counter() - t0, 3)
        overall_ok &= ok

    if "verify" not in args.skip:
        t0 = time.perf_counter()
        certs = {lid: verify_lemma(lid, Mode.CERTIFIED, args.jobs) for lid in LEMMA_VERIFIERS}
        rollup = combine_theorem_3_2(certs)
        doc["sections"]["verify"] = {
            "lemmas": {lid: c.passed for lid, c in certs.items()},
            "thm3.2": rollup.passed,
            "min_margins": {lid: c.min_margin for lid, c in certs.items()},
        }
        doc["timings_s"]["verify"] = round(time.perf_counter() - t0, 3)
        overall_ok &= rollup.passed

    if "bounds" not in args.skip:
        t0 = time.perf_counter()
        bounds_section = {}
        csv_blocks = []
        for theorem in TheoremId:
            rows = _scan_rows(theorem, Fraction(1, 100), Fraction(99, 100),
                              Fraction(1, 100), Mode.CERTIFIED, None)
            ok = all(row[-1] == BoundsStatus.PASS.value for row in rows)
            bounds_section[theorem.value] = {"points": len(rows), "all_strict": ok}
            overall_ok &= ok
            if args.format == "csv":
                lines = ["q,lhs_lo,lhs_hi,mid_lo,mid_hi,rhs_lo,rhs_hi,status"]
                lines += [",".join(repr(v) if isinstance(v, float) else str(v) for v in row)
                          for row in rows]
                csv_blocks.append(f"# theorem={theorem.value}\n" + "\n".join(lines))
        doc["sections"]["bounds"] = bounds_section
        doc["timings_s"]["bounds"] = round(time.perf_counter() - t0, 3)
        if args.format == "csv":
            print("\n\n".join(csv_blocks))

    doc["passed"] = overall_ok
    if args.format == "json":
        _print_json(doc)
    else:
        _print_json({"schema_version": SCHEMA_VERSION, "passed": overall_ok,
                     "timings_s": doc["timings_s"]})
    return EXIT_OK if overall_ok else EXIT_VERIFICATION_FAILED


_HANDLERS = {
    "coeffs": _cmd_coeffs,
    "identity-check": _cmd_identity_check,
    "eval": _cmd_eval,
    "lemma-fn": _cmd_lemma_fn,
    "bounds-scan": _cmd_bounds_scan,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (DomainError, TermBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
