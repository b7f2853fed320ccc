"""Command-line front end: analyze, family, verify, graph, corpus.

Exit codes: 0 success, 1 counterexample or failed check, 2 usage error,
3 input parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from random import Random

from .boolfn import BoolFunction, parse_positive_dnf, parse_table, serialize
from .errors import (
    DnfParseError,
    FormulaParseError,
    NotThresholdInputError,
    TableFormatError,
    TltError,
    UnsupportedArityError,
    VariableIndexError,
)
from .extremal import build_extremal_graph, is_acyclic
from .family import family_bundle, make_family, verify_family
from .harness import ALL_SUITES, HarnessConfig, VerificationReport, run_all
from .read_once import format_formula, is_nested, recognize_lro
from .separability import NotThreshold, check_threshold, find_k_summability
from .teaching import ALL_POINTS, EXTREMAL_ONLY, essential_points

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3


def _load_function(args: argparse.Namespace) -> tuple[BoolFunction, dict]:
    if args.table is not None:
        f = parse_table(args.table)
        return f, {"table": args.table.strip()}
    text = args.dnf
    arity = args.arity
    if arity is None:
        indices = [int(tok) for tok in _dnf_indices(text)]
        if not indices:
            raise DnfParseError("no variables in DNF", 0)
        arity = max(indices)
    return parse_positive_dnf(text, arity), {"dnf": text, "arity": arity}


def _dnf_indices(text: str) -> list[str]:
    out: list[str] = []
    digits = ""
    active = False
    for c in text:
        if active and c.isdigit():
            digits += c
            continue
        if active and digits:
            out.append(digits)
        active, digits = c == "x", ""
    if active and digits:
        out.append(digits)
    return out


def analyze_bundle(f: BoolFunction, skip_essential: bool = False, essential_mode: str = "all") -> dict:
    bundle: dict = {"arity": f.arity, "table": serialize(f)}
    timings: dict[str, float] = {}

    start = time.perf_counter()
    positive = f.is_positive()
    relevant = sorted(f.relevant_variables())
    timings["structure"] = time.perf_counter() - start
    bundle["positive"] = positive
    bundle["relevant_variables"] = relevant

    start = time.perf_counter()
    verdict = check_threshold(f)
    timings["threshold"] = time.perf_counter() - start
    if isinstance(verdict, NotThreshold):
        summability = verdict.summability or find_k_summability(f, 2)
        bundle["threshold"] = {
            "is_threshold": False,
            "summability": summability.to_json_dict() if summability else None,
            "farkas": [str(x) for x in verdict.farkas] if verdict.farkas else None,
        }
    else:
        bundle["threshold"] = {"is_threshold": True, "certificate": verdict.to_json_dict()}

    start = time.perf_counter()
    formula = recognize_lro(f)
    timings["read_once"] = time.perf_counter() - start
    bundle["linear_read_once"] = {
        "is_lro": formula is not None,
        "formula": format_formula(formula) if formula is not None else None,
    }
    bundle["nested"] = is_nested(f)

    if positive:
        start = time.perf_counter()
        ext = f.extremal_points()
        timings["extremal"] = time.perf_counter() - start
        bundle["extremal"] = {
            "maximal_zeros": sorted(p.to_bitstring() for p in ext.maximal_zeros),
            "minimal_ones": sorted(p.to_bitstring() for p in ext.minimal_ones),
            "count": ext.count,
        }
    else:
        bundle["extremal"] = {"skipped": "not_positive"}

    if skip_essential:
        bundle["essential"] = {"skipped": "by_flag"}
    elif not bundle["threshold"]["is_threshold"]:
        bundle["essential"] = {"skipped": "not_threshold"}
    else:
        mode = essential_mode
        if mode == "auto":
            eligible = positive and len(relevant) == f.arity
            mode = EXTREMAL_ONLY if eligible else ALL_POINTS
        start = time.perf_counter()
        report = essential_points(f, candidates=mode)
        timings["essential"] = time.perf_counter() - start
        bundle["essential"] = {
            "points": sorted(p.to_bitstring() for p in report.essential),
            "spec_number": report.spec_number,
            "candidates": mode,
        }
    bundle["timings_ms"] = {k: round(v * 1000, 3) for k, v in timings.items()}
    return bundle


def _print_bundle_table(bundle: dict) -> None:
    print(f"arity:     {bundle['arity']}")
    print(f"table:     {bundle['table']}")
    print(f"positive:  {bundle['positive']}")
    print(f"relevant:  {bundle['relevant_variables']}")
    thr = bundle["threshold"]
    if thr["is_threshold"]:
        cert = thr["certificate"]
        print(f"threshold: yes  weights={cert['weights']} t={cert['threshold']}")
    else:
        print("threshold: no")
        if thr.get("summability"):
            s = thr["summability"]
            print(f"  summable: r={s['r']} false={s['false']} true={s['true']}")
    lro = bundle["linear_read_once"]
    print(f"read-once: {lro['is_lro']}" + (f"  {lro['formula']}" if lro["formula"] else ""))
    print(f"nested:    {bundle['nested']}")
    ext = bundle["extremal"]
    if "skipped" in ext:
        print(f"extremal:  skipped ({ext['skipped']})")
    else:
        print(f"extremal:  r={ext['count']} zeros={ext['maximal_zeros']} ones={ext['minimal_ones']}")
    ess = bundle["essential"]
    if "skipped" in ess:
        reason = "undefined (not threshold)" if ess["skipped"] == "not_threshold" else ess["skipped"]
        print(f"sigma:     {reason}")
    else:
        print(f"sigma:     {ess['spec_number']} essential={ess['points']}")


def cmd_analyze(args: argparse.Namespace) -> int:
    f, echo = _load_function(args)
    bundle = {"input": echo}
    bundle.update(analyze_bundle(f, skip_essential=args.skip_essential, essential_mode=args.essential_mode))
    if args.json:
        print(json.dumps(bundle, indent=2))
    else:
        _print_bundle_table(bundle)
    return EXIT_OK


def cmd_family(args: argparse.Namespace) -> int:
    inst = make_family(args.n)
    verdict = verify_family(inst, recheck_all_points=True if args.recheck_all_points else None)
    print(json.dumps(family_bundle(inst, verdict), indent=2))
    return EXIT_OK if verdict.ok else EXIT_COUNTEREXAMPLE


def _report_lines(report: VerificationReport) -> str:
    status = "ok" if report.ok else f"{len(report.counterexamples)} counterexamples"
    line = (
        f"{report.statement:34} {report.universe:64} "
        f"pop={report.population:<8} pass={report.passes:<8} {status}  [{report.wall_time:.2f}s]"
    )
    if report.notes:
        line += f"\n{'':34} note: {report.notes}"
    for cex in report.counterexamples[:10]:
        line += f"\n{'':34} counterexample {cex.function}: {cex.detail}"
    return line


def cmd_verify(args: argparse.Namespace) -> int:
    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    config = HarnessConfig(
        suites=suites,
        max_n=args.max_n,
        seed=args.seed,
        threads=args.threads,
        draws=args.draws,
        essential_sample=args.sample,
    )
    reports = run_all(config)
    for report in reports:
        print(_report_lines(report))
    if args.json:
        payload = [r.to_json_dict() for r in reports]
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_COUNTEREXAMPLE


def cmd_graph(args: argparse.Namespace) -> int:
    f, _ = _load_function(args)
    if args.vars:
        try:
            variables = [int(tok) for tok in args.vars.split(",") if tok.strip()]
        except ValueError:
            raise VariableIndexError(f"bad variable list {args.vars!r}") from None
    else:
        variables = sorted(f.relevant_variables())
    rng = Random(f"graph:{args.seed}") if args.selection == "random" else None
    graph = build_extremal_graph(f, variables, rng=rng)
    acyclic = is_acyclic(graph)
    print(graph.description())
    print(f"acyclic: {acyclic}")
    return EXIT_OK if acyclic else EXIT_COUNTEREXAMPLE


def cmd_corpus(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    for number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            f = parse_table(stripped)
        except TltError as exc:
            print(f"{path}:{number}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        bundle = {"input": {"table": stripped, "line": number}}
        bundle.update(analyze_bundle(f, skip_essential=args.skip_essential))
        print(json.dumps(bundle))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlt",
        description="Analyze threshold Boolean functions: certificates, extremal points, "
        "specification numbers, read-once structure, and exhaustive verification sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--dnf", help="positive DNF, e.g. 'x1x2 | x1x3'")
        group.add_argument("--table", help="truth table, e.g. '2:0001'")
        p.add_argument("--arity", type=int, help="arity for --dnf (default: highest index used)")

    p_analyze = sub.add_parser("analyze", help="full analysis of one function")
    add_input(p_analyze)
    p_analyze.add_argument("--skip-essential", action="store_true", help="skip the specification-number scan")
    p_analyze.add_argument(
        "--essential-mode",
        choices=["auto", ALL_POINTS, EXTREMAL_ONLY],
        default=ALL_POINTS,
        help="candidate pool for essential-point flips (default: all points)",
    )
    p_analyze.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p_analyze.set_defaults(func=cmd_analyze)

    p_family = sub.add_parser("family", help="build and verify a counterexample-family member")
    p_family.add_argument("--n", type=int, required=True, help="number of variables (>= 4)")
    p_family.add_argument(
        "--recheck-all-points",
        action="store_true",
        help="re-run the essential scan over the whole cube (automatic at n=4)",
    )
    p_family.set_defaults(func=cmd_family)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", default="all", choices=("all",) + ALL_SUITES)
    p_verify.add_argument("--max-n", type=int, default=None, help="arity cap override")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.add_argument("--draws", type=int, default=20, help="random selections per function (acyclic/probe)")
    p_verify.add_argument("--sample", type=int, default=200, help="sample size for the specifying suite at n=4")
    p_verify.add_argument("--json", metavar="PATH", help="also write machine-readable reports")
    p_verify.set_defaults(func=cmd_verify)

    p_graph = sub.add_parser("graph", help="build an extremal graph")
    add_input(p_graph)
    p_graph.add_argument("--vars", help="comma-separated variable indices (default: all relevant)")
    p_graph.add_argument("--selection", choices=["deterministic", "random"], default="deterministic")
    p_graph.add_argument("--seed", type=int, default=0)
    p_graph.set_defaults(func=cmd_graph)

    p_corpus = sub.add_parser("corpus", help="analyze a file of truth tables, one JSON bundle per line")
    p_corpus.add_argument("--file", required=True)
    p_corpus.add_argument("--skip-essential", action="store_true")
    p_corpus.set_defaults(func=cmd_corpus)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DnfParseError, TableFormatError, FormulaParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnsupportedArityError, VariableIndexError, NotThresholdInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
