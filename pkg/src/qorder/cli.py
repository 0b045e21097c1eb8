"""Command line: ``qorder analyze | explain | project | synth``.

Exit codes: 0 success, 1 usage, 2 I/O, 3 parse/validation, 4 infeasible config.
"""

import argparse
import dataclasses
import json
import sys

from . import __version__
from .exceptions import ConfigurationError, DomainError, LogFormatError, QOrderError
from .explain import explain, explain_auto
from .hilbert import BasisRepresentation, change_of_basis, order_effect, state_from_probability
from .io import explanation_to_text, format_report, iter_log, read_log, write_log
from .logs import DEFAULT_SAT_SECONDS, IrrationalQueryDetector, analyze
from .profiles import dimension_name
from .synth import SynthConfig, iter_records

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVALID, EXIT_INFEASIBLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _criteria_list(text):
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"criteria must be comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("at least one criteria is required")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise argparse.ArgumentTypeError(f"criteria must lie in [0, 1], got {v}")
    return values


def _probability(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return value


def _non_negative(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _dims(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("--dims takes two comma-separated dimensions")
    try:
        first, second = (dimension_name(p) for p in parts)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if first == second:
        raise argparse.ArgumentTypeError("--dims must name two different dimensions")
    return first, second


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_analyze(args):
    if args.input == "-":
        records = list(iter_log(sys.stdin))
    else:
        records = read_log(args.input)
    report = analyze(records, args.criteria, args.sat_dwell, normalized=args.normalized)
    _emit(format_report(report, args.format), args.out)
    return EXIT_OK


def cmd_explain(args):
    records = read_log(args.input)
    record = next((r for r in records if r.query_id == args.query), None)
    if record is None:
        print(f"qorder explain: query {args.query!r} not found in {args.input}", file=sys.stderr)
        return EXIT_INVALID
    if len(record.docs) < 2:
        print(f"qorder explain: query {args.query!r} has fewer than two documents", file=sys.stderr)
        return EXIT_INVALID

    detector = IrrationalQueryDetector(args.criteria, args.sat_dwell, args.normalized)
    if not detector.predict([record])[0]:
        print(
            f"warning: query {args.query!r} is not an irrational-behavior query "
            f"at criteria {args.criteria:g}; explaining anyway",
            file=sys.stderr,
        )
    profiles, _ = record.profiles(args.normalized)
    if args.dims:
        result = explain(profiles[0], profiles[1], *args.dims, query_id=record.query_id)
    else:
        result = explain_auto(profiles[0], profiles[1], query_id=record.query_id)

    if args.format == "json":
        payload = result.to_dict()
        payload["profiles"] = [p.as_dict() for p in profiles[:2]]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = explanation_to_text(result, profiles[:2])
    _emit(text, args.out)
    return EXIT_OK


def cmd_project(args):
    s_first = state_from_probability(args.p_first)
    s_second = state_from_probability(args.p_second)
    change = change_of_basis(BasisRepresentation("first", s_first, "second", s_second))
    effect = order_effect(s_first, s_second)
    cross = change.cross_probability
    c = change.c_in_ab

    def signed(v):
        return f"{'-' if v < 0 else '+'} {abs(v):.4f}"

    ratio = "undefined" if effect.ratio is None else f"{effect.ratio:.4f}"
    print(f"|S> = {s_first.a:.4f}|A> {signed(s_first.b)}|~A>")
    print(f"    = {s_second.a:.4f}|B> {signed(s_second.b)}|~B>")
    print(f"|B> = {c.a:.4f}|A> {signed(c.b)}|~A>")
    print(f"|<A|B>|^2 = {cross:.4f}")
    print(f"P(A, B): S -> A -> B = {args.p_first:.4f} * {cross:.4f} = {effect.p_ab:.4f}")
    print(f"P(B, A): S -> B -> A = {args.p_second:.4f} * {cross:.4f} = {effect.p_ba:.4f}")
    print(f"difference: {effect.delta:.4f}")
    print(f"ratio: {ratio}")
    return EXIT_OK


def _synth_config(args):
    fields = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                fields = json.load(fh)
            except json.JSONDecodeError as exc:
                raise LogFormatError(f"config {args.config}: {exc.msg}", exc.lineno) from None
        known = {f.name for f in dataclasses.fields(SynthConfig)}
        unknown = set(fields) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        if "docs_per_query" in fields:
            fields["docs_per_query"] = tuple(fields["docs_per_query"])
        if fields.get("target_rows") is not None:
            fields["target_rows"] = tuple(tuple(r) for r in fields["target_rows"])
    if args.table1:
        base = SynthConfig.table1()
        fields.setdefault("total_queries", base.total_queries)
        fields["target_rows"] = base.target_rows
    if args.queries is not None:
        if args.table1 and args.queries != fields["total_queries"]:
            raise ConfigurationError("--table1 fixes the number of queries; drop --queries")
        fields["total_queries"] = args.queries
    if args.seed is not None:
        fields["seed"] = args.seed
    if args.docs is not None:
        fields["docs_per_query"] = args.docs
    return SynthConfig(**fields).validate()


def _docs_range(text):
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--docs takes MIN,MAX integers, got {text!r}")
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"--docs takes MIN,MAX integers, got {text!r}")
    return tuple(parts)


def cmd_synth(args):
    config = _synth_config(args)
    stats = {"queries": 0, "documents": 0, "clicks": 0}

    def counted(records):
        for rec in records:
            stats["queries"] += 1
            stats["documents"] += len(rec["docs"])
            stats["clicks"] += sum(d["clicked"] for d in rec["docs"])
            yield rec

    write_log(counted(iter_records(config)), args.out)
    print(
        f"wrote {stats['queries']} queries, {stats['documents']} documents, "
        f"{stats['clicks']} clicks to {args.out} (seed {config.seed})"
    )
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="qorder", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="count SFT/SFTSC/IRQ queries per matching criteria")
    p.add_argument("--input", required=True, help="JSONL query log ('-' for stdin)")
    p.add_argument("--criteria", type=_criteria_list, default=[0.10, 0.05, 0.0])
    p.add_argument("--sat-dwell", type=_non_negative, default=DEFAULT_SAT_SECONDS,
                   help="dwell in seconds a click must exceed to be SAT")
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--normalized", action="store_true",
                   help="scores are already profile probabilities; skip min-max")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("explain", help="order-effect explanation of one query")
    p.add_argument("--input", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--dims", type=_dims, help="first,second dimension, e.g. reliability,topicality")
    p.add_argument("--criteria", type=_probability, default=0.0,
                   help="matching criteria used for the IRQ membership check")
    p.add_argument("--sat-dwell", type=_non_negative, default=DEFAULT_SAT_SECONDS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("project", help="two-basis sequential projection walkthrough")
    p.add_argument("--p-first", type=_probability, required=True)
    p.add_argument("--p-second", type=_probability, required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("synth", help="generate a seeded synthetic query log")
    p.add_argument("--seed", type=int)
    p.add_argument("--queries", type=int)
    p.add_argument("--docs", type=_docs_range, help="documents per query as MIN,MAX")
    p.add_argument("--table1", action="store_true", help="calibrate to the published Table 1 counts")
    p.add_argument("--config", help="JSON file with synthetic-log settings")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except OSError as exc:
        print(f"qorder {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigurationError as exc:
        print(f"qorder {args.command}: infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except QOrderError as exc:
        print(f"qorder {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
