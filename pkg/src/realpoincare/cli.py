"""Command line interface.

    realpoincare analyze   <file> [--json]
    realpoincare series    <file> [--order N] [--which s|classical|real|all] [--json]
    realpoincare verify    <file> [--max-order A] [--size-cap N] [--expect FIX] [--json]
    realpoincare conjugate <file> [--json]

Exit codes: 0 ok, 2 parse error, 3 validation/domain error, 4 verification
mismatch, 5 resource or precision cap exceeded (1 for internal errors).

The CLI is a thin client of the pipeline layer; the HTTP service in
``realpoincare.service`` exposes the same reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    InvariantViolation,
    ParseError,
    ResourceError,
    ValidationError,
)
from .oracle import DEFAULT_SIZE_CAP
from .pipeline import (
    BranchAnalysis,
    analysis_report,
    analyze_text,
    conjugate_report,
    run_verification,
    series_report,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_MISMATCH = 4
EXIT_RESOURCE = 5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realpoincare",
        description=(
            "Real resolution data, real semigroup of values and the three "
            "Poincare series of a plane curve branch x = t^n, y(t)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="branch input file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("analyze", help="resolution data, splitting point, M-generators")
    common(p)

    p = sub.add_parser("series", help="factored Poincare series and expansions")
    common(p)
    p.add_argument("--order", type=int, default=None, help="expansion order (default c + 2 m_rho + 16)")
    p.add_argument(
        "--which",
        choices=("s", "classical", "real", "all"),
        default="all",
        help="which series to emit",
    )

    p = sub.add_parser("verify", help="run the full property suite against the oracle")
    common(p)
    p.add_argument("--max-order", type=int, default=None, help="verification window (default c + m_rho + 10)")
    p.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP, help="jet matrix row cap")
    p.add_argument("--expect", default=None, help="JSON fixture of expected invariants")

    p = sub.add_parser("conjugate", help="complex branch realizing the real semigroup")
    common(p)
    return parser


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _print_analysis(analysis: BranchAnalysis, report: dict) -> None:
    b = report["branch"]
    print(f"branch          {analysis.branch}")
    print(f"multiplicity    {b['multiplicity']}" + ("  (smooth)" if b["smooth"] else ""))
    reality = report["reality"]
    if reality["real_form"]:
        print(f"reality         C = conj(C); real form with zeta = exp(2 pi i {reality['witness_k']}/{analysis.branch.n})")
    elif reality["conjugation_invariant"]:
        print("reality         C = conj(C) (no real form in this chart)")
    else:
        print("reality         C != conj(C)")
    ce = report["char_exponents"]
    if ce:
        print(f"char exponents  beta = {tuple(ce['beta'])}, e = {tuple(ce['e'])}, N = {tuple(ce['N'])}, genus {ce['genus']}")
    if report["classical_semigroup"]:
        cs = report["classical_semigroup"]
        print(f"semigroup S_C   <{', '.join(map(str, cs['generators']))}>, conductor {cs['conductor']}")
    if report["resolution"]:
        print("points          id mult kind       prox     real  translation")
        for p in report["resolution"]["points"]:
            prox = ",".join(map(str, p["proximate_to"])) or "-"
            transl = p["translation"] if p["translation"] is not None else "-"
            print(
                f"                {p['id']:<2} {p['multiplicity']:<4} {p['kind']:<10} "
                f"{prox:<8} {'yes' if p['center_real'] else 'no':<5} {transl}"
            )
        edges = " ".join(f"{a}-{b}" for a, b in report["resolution"]["edges"])
        print(f"dual graph      edges {edges}")
        selfs = " ".join(
            f"E{v['id']}:{v['self_intersection']}" for v in report["resolution"]["vertices"]
        )
        print(f"                self-intersections {selfs}")
        print(f"m-column        {report['multiplicity_column']} (at delta_C)")
    cls = report["classification"]
    if cls:
        print(
            f"classification  sigma = {tuple(cls['sigma'])}  tau = {tuple(cls['tau'])}  "
            f"delta_C = {cls['delta_C']}"
        )
        if cls["rho"] is not None:
            fig = "yes" if cls["figure2"] else "no"
            print(f"splitting       rho = {cls['rho']}, q = {cls['q']}, figure2 = {fig}")
    real = report["real"]
    if real:
        print(
            f"real semigroup  M = ({', '.join(map(str, real['M_sigma']))}), "
            f"m_rho = {real['m_rho']}, conductor {real['semigroup']['conductor']}"
        )
        print(f"recipe          b = {tuple(real['recipe_b'])}: {real['recipe_parametrization'].replace(chr(10), ', ')}")
        mirror = report["real_graph_mirror"]
        if mirror and mirror["vertices"]:
            print(f"mirror (display) conjugate copies {', '.join(mirror['vertices'])} glued at rho")
    elif report.get("degenerate_note"):
        print(f"note            {report['degenerate_note']}")


def _print_series(report: dict) -> None:
    for key, label in (("PS", "P^S"), ("P", "P"), ("PR", "P^R")):
        if report["factored"].get(key):
            print(f"{label:<4} = {report['factored'][key]}")
    if report.get("note"):
        print(f"note: {report['note']}")
    order = report["expansion"]["order"]
    for key, coeffs in report["expansion"]["coefficients"].items():
        shown = " ".join(str(c) for c in coeffs[: min(order, 40) + 1])
        suffix = " ..." if order > 40 else ""
        print(f"{key} coefficients a=0..{min(order, 40)}: {shown}{suffix}")


def _print_verification(report: dict) -> None:
    for section in report["sections"]:
        mark = "PASS" if section["passed"] else "FAIL"
        print(f"{mark}  {section['name']}")
        for f in section["failures"][:4]:
            print(f"      {f}")
    for name, why in report["skipped"].items():
        print(f"SKIP  {name} ({why})")
    for diff in report["expected_diffs"]:
        print(f"FAIL  expected-fixture: {diff}")
    if report["D_used"] is not None:
        rows, cols = report["matrix_shape"]
        print(f"oracle: degree {report['D_used']}, matrix {rows} x {cols}, range {report['range']}")
    print("verdict:", "AGREE" if report["agree"] else "MISMATCH")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        text = _read_file(args.file)
        analysis = analyze_text(text)
        if args.command == "analyze":
            report = analysis_report(analysis)
            print(json.dumps(report, indent=2) if args.json else "", end="")
            if not args.json:
                _print_analysis(analysis, report)
            return EXIT_OK
        if args.command == "series":
            report = series_report(analysis, which=args.which, order=args.order)
            if args.json:
                print(json.dumps(report, indent=2))
            else:
                _print_series(report)
            return EXIT_OK
        if args.command == "verify":
            expected = None
            if args.expect:
                with open(args.expect, "r", encoding="utf-8") as fh:
                    expected = json.load(fh)
            verification = run_verification(
                analysis,
                max_order=args.max_order,
                size_cap=args.size_cap,
                expected=expected,
            )
            report = verification.as_json()
            if args.json:
                print(json.dumps(report, indent=2))
            else:
                _print_verification(report)
            return EXIT_OK if verification.agree else EXIT_MISMATCH
        if args.command == "conjugate":
            report = conjugate_report(analysis)
            if args.json:
                print(json.dumps(report, indent=2))
            else:
                print(f"b sequence      {tuple(report['b'])}")
                print(f"parametrization {report['parametrization'].replace(chr(10), ', ')}")
                ver = report["verification"]
                mark = "PASS" if ver["passed"] else "FAIL"
                print(f"{mark}  semigroup of the recipe branch equals <M_sigma>")
                for f in ver["failures"][:4]:
                    print(f"      {f}")
            ok = report["verification"]["passed"]
            return EXIT_OK if ok else EXIT_MISMATCH
        parser.error(f"unknown command {args.command}")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
