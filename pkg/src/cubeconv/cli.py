"""Command-line front end: exponent lookup, family counting, randomized
verification, extremal families, and the critical-point lab.

Machine output is a single sorted-key JSON object on stdout; exit codes
are 0 = success/bound holds, 1 = a mathematical claim was violated,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import counting, lemma_lab, verifier
from .core import REAL, CubeFunction, SetFamily, exponent

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Family files: optional "m=<int>" header, one set per line as 1-based
# comma-separated elements, "-" for the empty set, "#" comments.


def parse_family(text: str) -> SetFamily:
    m = None
    element_sets: list[frozenset[int]] = []
    saw_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("m="):
            if saw_content:
                raise ValueError(f"line {lineno}: header must precede all sets")
            if m is not None:
                raise ValueError(f"line {lineno}: duplicate header")
            m = int(line[2:])
            if m < 1:
                raise ValueError(f"line {lineno}: m must be >= 1")
            continue
        saw_content = True
        if line == "-":
            element_sets.append(frozenset())
            continue
        parts = [piece.strip() for piece in line.split(",")]
        elems = []
        for piece in parts:
            if not piece:
                raise ValueError(f"line {lineno}: empty element")
            e = int(piece)
            if e < 1:
                raise ValueError(f"line {lineno}: element {e} out of range (1-based)")
            elems.append(e)
        if len(set(elems)) != len(elems):
            raise ValueError(f"line {lineno}: duplicate element within set")
        element_sets.append(frozenset(elems))
    if not element_sets:
        raise ValueError("family file contains no sets")
    if m is None:
        largest = max((max(s) for s in element_sets if s), default=0)
        if largest == 0:
            raise ValueError("cannot infer m from a family of only empty sets; add an m= header")
        m = largest
    masks = []
    for s in element_sets:
        if s and max(s) > m:
            raise ValueError(f"element {max(s)} exceeds m={m}")
        masks.append(sum(1 << (e - 1) for e in s))
    if len(set(masks)) != len(masks):
        raise ValueError("duplicate sets in family file")
    return SetFamily.from_masks(m, masks)


def serialize_family(family: SetFamily) -> str:
    lines = [f"m={family.m}"]
    for mask in family.members:
        elems = [str(i + 1) for i in range(family.m) if mask >> i & 1]
        lines.append(",".join(elems) if elems else "-")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Function files: header "m=<int> count=<n>", then n blocks of 2^m
# decimal values in mask-index order (element i contributes bit 2^(i-1)).


def parse_functions(text: str) -> list[CubeFunction]:
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    tokens = " ".join(lines).split()
    if len(tokens) < 2 or not tokens[0].startswith("m=") or not tokens[1].startswith("count="):
        raise ValueError('function file must start with a "m=<int> count=<n>" header')
    m = int(tokens[0][2:])
    n = int(tokens[1][6:])
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and count >= 1")
    values = [float(tok) for tok in tokens[2:]]
    if len(values) != n << m:
        raise ValueError(f"expected {n << m} values, got {len(values)}")
    size = 1 << m
    return [CubeFunction(m, values[j * size : (j + 1) * size], REAL) for j in range(n)]


def serialize_functions(fs: list[CubeFunction]) -> str:
    m = fs[0].m
    out = [f"m={m} count={len(fs)}"]
    for f in fs:
        out.append(" ".join(repr(v) for v in f.values))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


def _cmd_exponent(args) -> int:
    params = exponent(args.n)
    _emit({"n": params.n, "p": params.p, "r": params.r, "c": params.c})
    return EXIT_OK


def _cmd_count(args) -> int:
    with open(args.family, encoding="utf-8") as fh:
        family = parse_family(fh.read())
    report = counting.bound_report(family, args.n, method=args.method)
    payload = dataclasses.asdict(report)
    payload["m"] = family.m
    payload["method"] = args.method
    payload["bound_slack"] = counting.BOUND_SLACK
    if report.count == 0:
        payload["log_count"] = None
    _emit(payload)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _cmd_verify(args) -> int:
    if args.functions is not None:
        with open(args.functions, encoding="utf-8") as fh:
            fs = parse_functions(fh.read())
        check = verifier.check_main_inequality(fs, exponent(len(fs)))
        _emit(
            {
                "mode": "functions",
                "n": len(fs),
                "m": fs[0].m,
                "lhs": check.lhs,
                "rhs": check.rhs,
                "max_ratio": check.ratio,
                "failures": 0 if check.passed else 1,
                "rel_tol": verifier.REL_TOL,
                "abs_tol": verifier.ABS_TOL,
            }
        )
        return EXIT_OK if check.passed else EXIT_VIOLATION
    if args.witness:
        fs = verifier.equality_witness(args.n, args.m)
        check = verifier.check_main_inequality(fs, exponent(args.n))
        tol = 1e-9 * max(1, args.m)
        ok = check.ratio is not None and abs(check.ratio - 1.0) <= tol
        _emit(
            {
                "mode": "witness",
                "n": args.n,
                "m": args.m,
                "max_ratio": check.ratio,
                "ratio_tol": tol,
                "failures": 0 if ok else 1,
            }
        )
        return EXIT_OK if ok else EXIT_VIOLATION
    config = verifier.TrialConfig(
        n=args.n,
        m=args.m,
        trials=args.trials,
        seed=args.seed,
        distribution=args.distribution,
        density=args.density,
        signed=args.signed,
    )
    report = verifier.run_trials(config)
    report["mode"] = "trials"
    _emit(report)
    return EXIT_OK if report["failures"] == 0 else EXIT_VIOLATION


def _cmd_extremal(args) -> int:
    family = counting.extremal_family(args.n, args.t)
    report = counting.bound_report(family, args.n)
    _emit(
        {
            "n": args.n,
            "t": args.t,
            "m": family.m,
            "family_size": report.family_size,
            "count": report.count,
            "ratio": report.ratio,
            "c": exponent(args.n).c,
            "holds": report.holds,
        }
    )
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _cmd_lemma(args) -> int:
    params = exponent(args.n)
    if args.action == "solve":
        if args.k is None:
            raise ValueError("lemma solve requires --k")
        report = lemma_lab.solve_critical_system(args.n, args.k, params)
        payload = dataclasses.asdict(report)
        payload["residual_tol"] = lemma_lab.RESIDUAL_TOL
        payload["identity_tol"] = lemma_lab.IDENTITY_TOL
        _emit(payload)
        if report.status != "ok":
            return EXIT_OK  # inadmissible (n, k) is information, not failure
        bad = (
            report.residual_eq1 > lemma_lab.RESIDUAL_TOL
            or report.identity_gap > lemma_lab.IDENTITY_TOL
            or report.last_value < -lemma_lab.RESIDUAL_TOL
        )
        return EXIT_VIOLATION if bad else EXIT_OK
    report = lemma_lab.scan_last_value(args.n, params, grid=args.grid)
    report["per_k"] = {str(k): v for k, v in report["per_k"].items()}
    _emit(report)
    return EXIT_OK if report["min_last_value"] >= -lemma_lab.RESIDUAL_TOL else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeconv",
        description="Subset convolution on the Hamming cube, disjoint-union tuple "
        "counting, and numerical inequality verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponent", help="print the sharp exponent p_n and c = n/p_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_exponent)

    p = sub.add_parser("count", help="count disjoint-union tuples in a family file")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["fast", "brute"], default="fast")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="randomized checks of the corner inequality")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", choices=list(verifier.DISTRIBUTIONS), default="uniform")
    p.add_argument("--density", type=float, default=0.25, help="P(value != 0) for sparse draws")
    p.add_argument("--signed", action="store_true")
    p.add_argument("--witness", action="store_true", help="check the tight tensor witness instead")
    p.add_argument("--functions", help="check one explicit tuple from a function file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("extremal", help="layered extremal family report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=_cmd_extremal)

    p = sub.add_parser("lemma", help="critical-point solve or grid scan")
    p.add_argument("action", choices=["solve", "scan"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--grid", type=int, default=10_000)
    p.set_defaults(func=_cmd_lemma)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
