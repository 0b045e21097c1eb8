"""Brute-force recount of the SFT / SFTSC / IRQ subsets straight from a JSONL file.

Deliberately shares no code with the package: plain json, plain loops, the
definitions written out literally.
"""

import json

HINRSTU = ["habit", "interest", "novelty", "reliability", "scope", "topicality", "understandability"]


def _normalize(docs, already_normalized):
    table = [[d["scores"][name] for name in HINRSTU] for d in docs]
    if already_normalized:
        return table
    out = [[0.0] * 7 for _ in table]
    for j in range(7):
        column = [row[j] for row in table]
        lo, hi = min(column), max(column)
        for i, x in enumerate(column):
            out[i][j] = 0.0 if hi == lo else (x - lo) / (hi - lo)
    return out


def _similar(first, second, criteria):
    for a, b in zip(first, second):
        bigger = max(a, b)
        diff = 0.0 if bigger == 0 else abs(b - a) / bigger
        if not diff <= criteria:
            return False
    return True


def _sat(doc, seconds):
    return doc.get("clicked", False) and doc.get("dwell_seconds", 0.0) > seconds


def recount(path, criteria_list, sat_seconds=30.0, already_normalized=False):
    """Return ``[(criteria, sft, sftsc, irq), ...]`` plus the number of queries."""
    queries = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                queries.append(json.loads(line))

    rows = []
    for c in criteria_list:
        sft = sftsc = irq = 0
        for q in queries:
            docs = sorted(q["docs"], key=lambda d: d["rank"])
            if len(docs) < 2:
                continue
            profiles = _normalize(docs, already_normalized)
            if not _similar(profiles[0], profiles[1], c):
                continue
            sft += 1
            if _sat(docs[1], sat_seconds):
                sftsc += 1
                if not _sat(docs[0], sat_seconds):
                    irq += 1
        rows.append((c, sft, sftsc, irq))
    return rows, len(queries)
