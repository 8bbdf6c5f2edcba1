"""Command-line front end.

Subcommands: analyze, verify-lemmas, search, verify-range, prove-odd, table.
Sequences are passed as +/- (or 1/0) strings; use @path to read one from a
file. Exit codes: 0 success, 1 usage error, 2 guard-rail or budget refusal,
3 internal invariant violation (a mandatory identity failed on a Barker
witness; should never happen).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from barkerlab import __version__
from barkerlab.correlation import acf, periodic_acf
from barkerlab.errors import (
    BarkerLabError,
    GuardRailError,
    InvariantViolationError,
    ParseError,
    UsageError,
)
from barkerlab.jsonio import canonical_dumps
from barkerlab.lemmas import full_report
from barkerlab.oddproof import (
    bounds_chain,
    lemma2_check,
    lemma3_breakdown,
    scan_to_csv,
    scan_to_json,
    theorem_scan,
)
from barkerlab.search import (
    DEFAULT_SAMPLE_BUDGET,
    DEFAULT_SEED,
    search_barker,
    search_min_psl,
    verify_range,
)
from barkerlab.catalogue import BARKER_LENGTHS, catalogue_sequences
from barkerlab.sequence import parse, runs

FORMATS = ("text", "json", "csv")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="barkerlab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"barkerlab {__version__}")
    parser.add_argument("--format", choices=FORMATS, default="text")
    parser.add_argument("--workers", type=int, default=1, metavar="K")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument(
        "--allow-large", action="store_true", help="lift the search size rails"
    )
    parser.add_argument(
        "--timings", action="store_true", help="append wall times (non-reproducible)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="autocorrelation, PSL, runs, identity report")
    p.add_argument("sequence", help="+/- or 1/0 string, or @file")

    p = sub.add_parser("verify-lemmas", help="identity + run-structure verdicts")
    p.add_argument("sequence", help="+/- or 1/0 string, or @file")

    p = sub.add_parser("search", help="search one length")
    p.add_argument("--length", type=int, required=True, metavar="N")
    p.add_argument("--mode", choices=("barker", "min-psl"), default="barker")
    p.add_argument("--strategy", choices=("full", "pruned", "skew"), default="pruned")
    p.add_argument("--budget", type=int, default=DEFAULT_SAMPLE_BUDGET)
    p.add_argument("--raw", action="store_true", help="drop the canonical restriction")
    p.add_argument(
        "--dedupe-reversal",
        action="store_true",
        help="report one witness per reversal pair",
    )

    p = sub.add_parser("verify-range", help="catalogue check over a length range")
    p.add_argument("--from", dest="lo", type=int, required=True, metavar="A")
    p.add_argument("--to", dest="hi", type=int, required=True, metavar="B")
    p.add_argument("--odd-only", action="store_true")

    p = sub.add_parser("prove-odd", help="skew search vs corridor classifier, odd lengths")
    p.add_argument("--max", dest="max_length", type=int, required=True, metavar="N")

    sub.add_parser("table", help="print the Barker catalogue with profiles")
    return parser


def _load_sequence(arg: str):
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            text = fh.read().strip()
    else:
        text = arg
    return parse(text)


def _csv_rows(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _print_search(outcome, args, out) -> None:
    if args.format == "json":
        print(canonical_dumps(outcome.to_json_dict()), file=out)
    elif args.format == "csv":
        rows = [
            [
                outcome.n,
                outcome.mode,
                outcome.strategy,
                len(outcome.found),
                "" if outcome.best_psl is None else outcome.best_psl,
                outcome.nodes_visited,
                outcome.nodes_pruned,
                ";".join(str(w) for w in outcome.found),
            ]
        ]
        print(
            _csv_rows(
                ["n", "mode", "strategy", "count", "best_psl",
                 "nodes_visited", "nodes_pruned", "witnesses"],
                rows,
            ),
            end="",
            file=out,
        )
    else:
        print(
            f"n={outcome.n} mode={outcome.mode} strategy={outcome.strategy}"
            f" canonical={'yes' if outcome.canonical else 'no'}",
            file=out,
        )
        if outcome.found:
            for w in outcome.found:
                print(f"  witness {w}", file=out)
        else:
            print("  0 Barker sequences" if outcome.mode == "barker" else "  (no witness)", file=out)
        line = f"  count={len(outcome.found)}"
        if outcome.best_psl is not None:
            line += f" best_psl={outcome.best_psl}"
        line += f" nodes_visited={outcome.nodes_visited} nodes_pruned={outcome.nodes_pruned}"
        if outcome.samples_used is not None:
            line += f" samples={outcome.samples_used}"
        print(line, file=out)
        if outcome.mode == "min_psl":
            verdict = "holds" if outcome.bound_holds else "EXCEEDED"
            print(
                f"  sidelobe bound floor(2n*ln(2n))={outcome.bound_floor}: {verdict}",
                file=out,
            )
    if args.timings:
        print(f"  wall_time={outcome.wall_time:.3f}s", file=out)


def _cmd_analyze(args, out) -> int:
    seq = _load_sequence(args.sequence)
    profile = acf(seq)
    run_profile = runs(seq)
    report = full_report(seq)
    if args.format == "csv":
        raise UsageError("analyze supports text and json output")
    if args.format == "json":
        doc = {
            "sequence": str(seq),
            "correlation": profile.to_json_dict(),
            "periodic": list(periodic_acf(seq)),
            "runs": run_profile.to_json_dict(),
            "report": report.to_json_dict(),
        }
        print(canonical_dumps(doc), file=out)
        return 0
    print(f"sequence : {seq}", file=out)
    print(f"length   : {seq.n}", file=out)
    print(f"acf      : {' '.join(str(c) for c in profile.values)}", file=out)
    print(f"psl      : {profile.psl if profile.psl is not None else 'n/a'}", file=out)
    merit = profile.merit_factor
    print(f"merit    : {merit if merit is not None else 'n/a'}", file=out)
    boundary_text = " ".join(str(b) for b in run_profile.boundaries)
    extra = ""
    if run_profile.offgrid_index is not None:
        extra = (
            f"  (offgrid_index={run_profile.offgrid_index}"
            f" boundary={run_profile.offgrid_boundary} pivot={run_profile.pivot})"
        )
    print(f"runs     : {boundary_text}  m={run_profile.run_count}{extra}", file=out)
    checks = " ".join(f"{k}={v}" for k, v in report.to_json_dict().items())
    print(f"checks   : {checks}", file=out)
    return 0


def _cmd_verify_lemmas(args, out) -> int:
    seq = _load_sequence(args.sequence)
    report = full_report(seq)
    l2 = lemma2_check(seq)
    chain = bounds_chain(seq)
    breakdown = lemma3_breakdown(seq)
    if args.format == "csv":
        raise UsageError("verify-lemmas supports text and json output")
    if args.format == "json":
        doc = {
            "sequence": str(seq),
            "report": report.to_json_dict(),
            "run_bounds": l2.to_json_dict(),
            "corridor": chain.to_json_dict(),
            "correlation_difference": breakdown.to_json_dict(),
        }
        print(canonical_dumps(doc), file=out)
        return 0
    print(f"sequence: {seq}", file=out)
    for name, verdict in report.to_json_dict().items():
        print(f"  {name}: {verdict}", file=out)

    def fmt(flag):
        if flag is None:
            return "n/a"
        return "pass" if flag else "fail"

    print(
        f"  run bounds: applicable={l2.applicable}"
        f" first_run_odd={fmt(l2.first_run_odd)}"
        f" offgrid_boundary_odd={fmt(l2.offgrid_boundary_odd)}"
        f" length_ok={fmt(l2.length_ok)}",
        file=out,
    )
    print(
        f"  corridor: applicable={chain.applicable}"
        f" lower_ok={fmt(chain.lower_ok)} upper_ok={fmt(chain.upper_ok)}"
        f" gap={chain.gap}",
        file=out,
    )
    if breakdown.applicable:
        print(
            f"  correlation difference: delta={breakdown.delta}"
            f" closed_form={breakdown.closed_form}"
            f" run_terms={list(breakdown.run_terms)}"
            f" tail_term={breakdown.tail_term}",
            file=out,
        )
    else:
        print(f"  correlation difference: n/a ({breakdown.reason})", file=out)
    return 0


def _cmd_search(args, out) -> int:
    kwargs = dict(
        canonical=not args.raw,
        workers=args.workers,
        allow_large=args.allow_large,
    )
    if args.mode == "barker":
        outcome = search_barker(
            args.length,
            args.strategy,
            dedupe_reversal=args.dedupe_reversal,
            **kwargs,
        )
    else:
        outcome = search_min_psl(args.length, args.budget, seed=args.seed, **kwargs)
        if not outcome.bound_holds:
            print(
                f"warning: sampled best PSL {outcome.best_psl} exceeds the "
                f"random-sequence sidelobe level at n={outcome.n}",
                file=sys.stderr,
            )
    _print_search(outcome, args, out)
    return 0


def _cmd_verify_range(args, out) -> int:
    summary = verify_range(
        args.lo,
        args.hi,
        args.odd_only,
        workers=args.workers,
        allow_large=args.allow_large,
    )
    if args.format == "json":
        print(canonical_dumps(summary.to_json_dict()), file=out)
        return 0
    if args.format == "csv":
        rows = [
            [row.n, row.count, ";".join(str(w) for w in row.witnesses)]
            for row in summary.rows
        ]
        print(_csv_rows(["n", "count", "witnesses"], rows), end="", file=out)
        return 0
    for row in summary.rows:
        witnesses = " ".join(str(w) for w in row.witnesses) or "(none)"
        print(f"n={row.n} count={row.count} witnesses={witnesses}", file=out)
    print("catalogue match: yes", file=out)
    return 0


def _cmd_prove_odd(args, out) -> int:
    rows = theorem_scan(
        args.max_length, workers=args.workers, allow_large=args.allow_large
    )
    if args.format == "json":
        print(canonical_dumps(scan_to_json(rows)), file=out)
        return 0
    if args.format == "csv":
        print(scan_to_csv(rows), end="", file=out)
        return 0
    for row in rows:
        witnesses = " ".join(str(w) for w in row.witnesses) or "(none)"
        print(
            f"n={row.n} barker={'yes' if row.barker_count else 'no'}"
            f" witnesses={witnesses}"
            f" classifier={'exists' if row.classifier_exists else 'none'}"
            f" agree={'yes' if row.agree else 'NO'}",
            file=out,
        )
    lengths = [str(row.n) for row in rows if row.barker_count]
    print(f"odd Barker lengths found: {{{', '.join(lengths)}}}", file=out)
    return 0


def _cmd_table(args, out) -> int:
    if args.format == "json":
        doc = []
        for n in BARKER_LENGTHS:
            for seq in catalogue_sequences(n):
                doc.append(
                    {"n": n, "sequence": str(seq), "correlation": acf(seq).to_json_dict()}
                )
        print(canonical_dumps({"catalogue": doc}), file=out)
        return 0
    rows = []
    for n in BARKER_LENGTHS:
        for seq in catalogue_sequences(n):
            profile = acf(seq)
            rows.append(
                [n, str(seq), profile.psl, str(profile.merit_factor),
                 " ".join(str(c) for c in profile.values)]
            )
    if args.format == "csv":
        print(_csv_rows(["n", "sequence", "psl", "merit_factor", "acf"], rows), end="", file=out)
        return 0
    for n, text, psl_value, merit, values in rows:
        print(f"n={n:<3} {text:<16} psl={psl_value} merit={merit:<8} acf: {values}", file=out)
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "verify-lemmas": _cmd_verify_lemmas,
    "search": _cmd_search,
    "verify-range": _cmd_verify_range,
    "prove-odd": _cmd_prove_odd,
    "table": _cmd_table,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        return _COMMANDS[args.command](args, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GuardRailError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except InvariantViolationError as exc:
        print(f"INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BarkerLabError as exc:  # pragma: no cover - no other subtypes today
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
