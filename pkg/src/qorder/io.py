"""JSON Lines query logs and report serialization.

One query per line::

    {"query_id": "q1", "docs": [{"doc_id": "a", "rank": 1,
      "scores": {"habit": 0.3, ..., "understandability": 0.56},
      "clicked": true, "dwell_seconds": 42.0}, ...]}
"""

import csv
import io
import json

from .exceptions import ContractError, DomainError, LogFormatError
from .logs import Document, QueryRecord
from .profiles import DIMENSIONS

CSV_HEADER = ("matching_criteria", "sft", "sftsc", "irq", "irq_percent_of_sft")


def record_from_dict(obj, lineno=None):
    """Build a validated :class:`QueryRecord` from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise LogFormatError(f"expected a JSON object, got {type(obj).__name__}", lineno)
    if "query_id" not in obj:
        raise LogFormatError("record has no query_id", lineno)
    qid = str(obj["query_id"])
    docs = obj.get("docs")
    if not isinstance(docs, list) or not docs:
        raise LogFormatError(f"query {qid!r}: 'docs' must be a non-empty list", lineno, qid)

    built = []
    for position, doc in enumerate(docs, start=1):
        if not isinstance(doc, dict):
            raise LogFormatError(f"query {qid!r}: document #{position} is not an object", lineno, qid)
        doc_id = str(doc.get("doc_id", position))
        scores = doc.get("scores")
        if not isinstance(scores, dict):
            raise LogFormatError(f"query {qid!r}: document {doc_id!r} has no 'scores' object", lineno, qid)
        try:
            values = [scores[name] for name in DIMENSIONS]
        except KeyError as exc:
            raise LogFormatError(
                f"query {qid!r}: document {doc_id!r} is missing dimension {exc.args[0]!r}", lineno, qid
            ) from None
        for name, value in zip(DIMENSIONS, values):
            if value.__class__ is not float and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise LogFormatError(
                    f"query {qid!r}: document {doc_id!r} has a non-numeric {name!r} score: {value!r}",
                    lineno, qid,
                )
        rank = doc.get("rank", position)
        clicked = doc.get("clicked", False)
        dwell = doc.get("dwell_seconds", 0.0)
        if not isinstance(clicked, bool):
            raise LogFormatError(f"query {qid!r}: document {doc_id!r} 'clicked' must be true/false", lineno, qid)
        if isinstance(rank, bool) or not isinstance(rank, int):
            raise LogFormatError(f"query {qid!r}: document {doc_id!r} 'rank' must be an integer", lineno, qid)
        if isinstance(dwell, bool) or not isinstance(dwell, (int, float)):
            raise LogFormatError(f"query {qid!r}: document {doc_id!r} 'dwell_seconds' must be a number", lineno, qid)
        try:
            built.append(Document(doc_id, rank, tuple(values), clicked, dwell))
        except (ContractError, DomainError) as exc:
            raise LogFormatError(f"query {qid!r}: document {doc_id!r}: {exc}", lineno, qid) from None
    try:
        return QueryRecord(qid, tuple(built))
    except ContractError as exc:
        raise LogFormatError(str(exc), lineno, qid) from None


def record_to_dict(record):
    return {
        "query_id": record.query_id,
        "docs": [
            {
                "doc_id": d.doc_id,
                "rank": d.rank,
                "scores": dict(zip(DIMENSIONS, d.scores)),
                "clicked": d.clicked,
                "dwell_seconds": d.dwell_seconds,
            }
            for d in record.docs
        ],
    }


def iter_log(lines):
    """Parse an iterable of JSONL lines, yielding records; blank lines are skipped."""
    seen = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogFormatError(f"malformed JSON: {exc.msg} (column {exc.colno})", lineno) from None
        record = record_from_dict(obj, lineno)
        if record.query_id in seen:
            raise LogFormatError(
                f"duplicate query_id {record.query_id!r} (first seen on line {seen[record.query_id]})",
                lineno, record.query_id,
            )
        seen[record.query_id] = lineno
        yield record


def read_log(path):
    """Read a JSONL query log into a list of records."""
    with open(path, encoding="utf-8") as fh:
        return list(iter_log(fh))


def dump_line(obj):
    return json.dumps(obj, ensure_ascii=False) + "\n"


def write_log(records, path):
    """Write records (``QueryRecord`` or plain dicts) as JSONL; returns the count."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            obj = record if isinstance(record, dict) else record_to_dict(record)
            fh.write(dump_line(obj))
            count += 1
    return count


def _percent_label(criteria):
    return f"{100 * criteria:g}%"


def report_to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow([repr(row.criteria), row.sft, row.sftsc, row.irq, f"{row.irq_percent_of_sft:.2f}"])
    return buf.getvalue()


def report_to_json(report):
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_to_text(report):
    header = ("Matching Criteria", "SFT", "SFTSC", "IRQ", "IRQ percent(of SFT)")
    body = [
        (_percent_label(r.criteria), str(r.sft), str(r.sftsc), str(r.irq), f"{r.irq_percent_of_sft:.2f}")
        for r in report.rows
    ]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    lines.extend(" | ".join(v.rjust(w) for v, w in zip(b, widths)) for b in body)
    lines.append("")
    lines.append(f"total queries: {report.total_queries}")
    lines.append(f"skipped (fewer than 2 documents): {report.skipped_queries}")
    lines.append(f"degenerate (constant dimension): {report.degenerate_queries}")
    lines.append(f"SAT dwell threshold: > {report.sat_threshold:g} s")
    return "\n".join(lines) + "\n"


FORMATTERS = {"csv": report_to_csv, "json": report_to_json, "text": report_to_text}


def format_report(report, fmt="text"):
    try:
        return FORMATTERS[fmt](report)
    except KeyError:
        raise DomainError(f"unknown report format {fmt!r}; choose from {sorted(FORMATTERS)}") from None


def _fmt4(value):
    return "undefined" if value is None else f"{value:.4f}"


def profiles_table(profiles):
    """Rank-by-dimension table of profiles, four decimals, HINRSTU columns."""
    header = ["Document rank"] + [name[0].upper() for name in DIMENSIONS]
    rows = [[str(rank)] + [f"{v:.4f}" for v in p] for rank, p in enumerate(profiles, start=1)]
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    lines.extend(" | ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows)
    return "\n".join(lines)


def explanation_to_text(explanation, profiles):
    e = explanation
    first, second = e.dim_first.capitalize(), e.dim_second.capitalize()
    lines = [
        f"query: {e.query_id}",
        profiles_table(profiles),
        "",
        f"dimensions: {first} (first), {second} (second)",
        f"|<{first}|{second}>|^2 = {_fmt4(e.cross_probability)}",
        f"document 1, {second} -> {first}: {_fmt4(e.p_forward)}",
        f"document 2, {first} -> {second}: {_fmt4(e.p_reverse)}",
        f"ratio: {_fmt4(e.ratio)}",
    ]
    if e.degenerate:
        lines.append("note: document 1 scores every dimension equally (degenerate)")
    return "\n".join(lines) + "\n"
