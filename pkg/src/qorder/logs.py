"""Query-log records and the similar-first-two irrational-click test.

A query is *SFT* when its rank-1 and rank-2 documents have matching dimensional
profiles, *SFTSC* when it is SFT and the rank-2 document was SAT-clicked, and
*IRQ* when it is SFTSC while the rank-1 document was not SAT-clicked.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import ContractError, DomainError
from .profiles import (
    N_DIMENSIONS,
    DimensionalProfile,
    _as_criteria,
    _minmax_columns,
    max_relative_difference,
)

DEFAULT_SAT_SECONDS = 30.0


def _check_click(rank, clicked, dwell):
    if isinstance(rank, bool) or int(rank) != rank or rank < 1:
        raise ContractError(f"doc_rank must be a positive integer, got {rank!r}")
    dwell = float(dwell)
    if not math.isfinite(dwell) or dwell < 0:
        raise ContractError(f"dwell_seconds must be finite and >= 0, got {dwell!r}")
    if not clicked and dwell != 0:
        raise ContractError("dwell_seconds must be 0 for a document that was not clicked")
    return int(rank), bool(clicked), dwell


@dataclass(frozen=True)
class ClickEvent:
    doc_rank: int
    clicked: bool = False
    dwell_seconds: float = 0.0

    def __post_init__(self):
        rank, clicked, dwell = _check_click(self.doc_rank, self.clicked, self.dwell_seconds)
        object.__setattr__(self, "doc_rank", rank)
        object.__setattr__(self, "clicked", clicked)
        object.__setattr__(self, "dwell_seconds", dwell)


@dataclass(frozen=True)
class Document:
    """One ranked result: its id, seven scores (raw or normalized) and click."""

    doc_id: str
    rank: int
    scores: tuple
    clicked: bool = False
    dwell_seconds: float = 0.0

    def __post_init__(self):
        scores = tuple(map(float, self.scores))
        if len(scores) != N_DIMENSIONS:
            raise ContractError(f"document {self.doc_id!r} needs {N_DIMENSIONS} scores, got {len(scores)}")
        if not all(map(math.isfinite, scores)):
            raise ContractError(f"document {self.doc_id!r} has non-finite scores {scores}")
        rank, clicked, dwell = _check_click(self.rank, self.clicked, self.dwell_seconds)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "clicked", clicked)
        object.__setattr__(self, "dwell_seconds", dwell)

    @property
    def click(self):
        return ClickEvent(self.rank, self.clicked, self.dwell_seconds)


@dataclass(frozen=True)
class QueryRecord:
    query_id: str
    docs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        docs = tuple(sorted(self.docs, key=lambda d: d.rank))
        if not docs:
            raise ContractError(f"query {self.query_id!r} has no documents")
        ranks = [d.rank for d in docs]
        if ranks != list(range(1, len(docs) + 1)):
            raise ContractError(f"query {self.query_id!r} ranks must be 1..{len(docs)}, got {ranks}")
        object.__setattr__(self, "docs", docs)

    def profiles(self, normalized=False, top=None):
        """Return ``(profiles, degenerate)`` for the documents in rank order.

        Raw scores are min-max normalized per dimension across all of the
        query's documents; ``normalized=True`` takes the scores as
        probabilities.  ``top`` limits how many profiles are built.
        """
        matrix = np.array([d.scores for d in self.docs], dtype=float)
        degenerate = False
        if not normalized:
            matrix, flat = _minmax_columns(matrix)
            degenerate = bool(flat.any())
        rows = matrix if top is None else matrix[:top]
        return tuple(DimensionalProfile(tuple(row)) for row in rows), degenerate


def is_sat_click(event, threshold_seconds=DEFAULT_SAT_SECONDS):
    """A click with dwell strictly longer than ``threshold_seconds``."""
    if threshold_seconds < 0:
        raise DomainError(f"threshold_seconds must be >= 0, got {threshold_seconds!r}")
    return bool(event.clicked and event.dwell_seconds > threshold_seconds)


class _Summary(NamedTuple):
    query_id: str
    comparable: bool
    max_rel_diff: float
    first: ClickEvent
    second: Optional[ClickEvent]
    degenerate: bool


def _summarize(record, normalized):
    profiles, degenerate = record.profiles(normalized, top=2)
    if len(profiles) < 2:
        return _Summary(record.query_id, False, float("inf"), record.docs[0].click, None, degenerate)
    return _Summary(
        record.query_id,
        True,
        max_relative_difference(profiles[0], profiles[1]),
        record.docs[0].click,
        record.docs[1].click,
        degenerate,
    )


def _index(log):
    index = {}
    for record in log:
        if record.query_id in index:
            raise ContractError(f"duplicate query_id {record.query_id!r}")
        index[record.query_id] = record
    return index


def find_sft(log, c, normalized=False):
    """Ids of queries whose first two documents match under criteria ``c``.

    Queries with fewer than two documents are never SFT.
    """
    threshold = _as_criteria(c).threshold
    out = set()
    for record in log:
        s = _summarize(record, normalized)
        if s.comparable and s.max_rel_diff <= threshold:
            out.add(s.query_id)
    return out


def find_sftsc(log, sft_ids, sat_threshold=DEFAULT_SAT_SECONDS):
    """Members of ``sft_ids`` whose rank-2 document was SAT-clicked."""
    index = _index(log)
    _check_subset(sft_ids, index)
    return {
        qid for qid in sft_ids
        if len(index[qid].docs) >= 2 and is_sat_click(index[qid].docs[1].click, sat_threshold)
    }


def find_irq(log, sftsc_ids, sat_threshold=DEFAULT_SAT_SECONDS):
    """Members of ``sftsc_ids`` whose rank-1 document was not SAT-clicked."""
    index = _index(log)
    _check_subset(sftsc_ids, index)
    return {qid for qid in sftsc_ids if not is_sat_click(index[qid].docs[0].click, sat_threshold)}


def _check_subset(ids, index):
    missing = set(ids) - index.keys()
    if missing:
        raise ContractError(f"ids not present in the log: {sorted(missing)[:5]}")


@dataclass(frozen=True)
class ReportRow:
    criteria: float
    sft: int
    sftsc: int
    irq: int

    @property
    def irq_percent_of_sft(self):
        return 100.0 * self.irq / self.sft if self.sft else 0.0


@dataclass(frozen=True)
class AnalysisReport:
    rows: tuple
    total_queries: int
    degenerate_queries: int = 0
    skipped_queries: int = 0
    sat_threshold: float = DEFAULT_SAT_SECONDS

    def to_dict(self):
        return {
            "total_queries": self.total_queries,
            "degenerate_queries": self.degenerate_queries,
            "skipped_queries": self.skipped_queries,
            "sat_threshold_seconds": self.sat_threshold,
            "rows": [
                {
                    "matching_criteria": r.criteria,
                    "sft": r.sft,
                    "sftsc": r.sftsc,
                    "irq": r.irq,
                    "irq_percent_of_sft": round(r.irq_percent_of_sft, 2),
                }
                for r in self.rows
            ],
        }


def analyze(log, criteria_list, sat_threshold=DEFAULT_SAT_SECONDS, normalized=False):
    """Count SFT, SFTSC and IRQ queries for each matching criteria.

    Rows come back in the order the criteria were given.  Each record is
    summarized once, so the cost is one pass over the log.
    """
    criteria = [_as_criteria(c).threshold for c in criteria_list]
    if not criteria:
        raise DomainError("criteria_list must not be empty")
    if sat_threshold < 0:
        raise DomainError(f"sat_threshold must be >= 0, got {sat_threshold!r}")

    seen = set()
    summaries = []
    for record in log:
        if record.query_id in seen:
            raise ContractError(f"duplicate query_id {record.query_id!r}")
        seen.add(record.query_id)
        summaries.append(_summarize(record, normalized))

    comparable = [s for s in summaries if s.comparable]
    rows = []
    for c in criteria:
        sft = sftsc = irq = 0
        for s in comparable:
            if s.max_rel_diff > c:
                continue
            sft += 1
            if is_sat_click(s.second, sat_threshold):
                sftsc += 1
                if not is_sat_click(s.first, sat_threshold):
                    irq += 1
        rows.append(ReportRow(c, sft, sftsc, irq))

    return AnalysisReport(
        rows=tuple(rows),
        total_queries=len(summaries),
        degenerate_queries=sum(s.degenerate for s in summaries),
        skipped_queries=len(summaries) - len(comparable),
        sat_threshold=float(sat_threshold),
    )


class IrrationalQueryDetector(BaseEstimator):
    """Flag queries whose second result was SAT-clicked over an equally good first.

    Parameters
    ----------
    criteria : float, default=0.0
        Matching criteria for the first two documents' profiles.
    sat_threshold : float, default=30.0
        Dwell, in seconds, that a click must exceed to count as SAT.
    normalized : bool, default=False
        Whether document scores are already profile probabilities.

    Attributes
    ----------
    sft_ids_, sftsc_ids_, irq_ids_ : frozenset
        The nested subsets found in the log passed to :meth:`fit`.
    n_skipped_ : int
        Queries with fewer than two documents.
    """

    def __init__(self, criteria=0.0, sat_threshold=DEFAULT_SAT_SECONDS, normalized=False):
        self.criteria = criteria
        self.sat_threshold = sat_threshold
        self.normalized = normalized

    def fit(self, log, y=None):
        log = list(log)
        sft = find_sft(log, self.criteria, self.normalized)
        sftsc = find_sftsc(log, sft, self.sat_threshold)
        self.sft_ids_ = frozenset(sft)
        self.sftsc_ids_ = frozenset(sftsc)
        self.irq_ids_ = frozenset(find_irq(log, sftsc, self.sat_threshold))
        self.n_skipped_ = sum(len(r.docs) < 2 for r in log)
        return self

    def predict(self, log):
        """Boolean array, True where the query is an irrational-behavior query."""
        threshold = _as_criteria(self.criteria).threshold
        flags = []
        for record in log:
            s = _summarize(record, self.normalized)
            flags.append(
                s.comparable
                and s.max_rel_diff <= threshold
                and is_sat_click(s.second, self.sat_threshold)
                and not is_sat_click(s.first, self.sat_threshold)
            )
        return np.array(flags, dtype=bool)

    def fit_predict(self, log, y=None):
        log = list(log)
        return self.fit(log).predict(log)
