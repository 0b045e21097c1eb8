import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from qorder import (
    ClickEvent,
    ContractError,
    Document,
    DomainError,
    IrrationalQueryDetector,
    QueryRecord,
    analyze,
    find_irq,
    find_sft,
    find_sftsc,
    is_sat_click,
)

from conftest import TABLE2_ROW

SAT = (True, 45.0)
SHORT = (True, 12.0)
NONE = (False, 0.0)


def record(qid, rows, clicks=None):
    clicks = clicks or [NONE] * len(rows)
    docs = [
        Document(f"{qid}-{i}", i, tuple(row), clicked, dwell)
        for i, (row, (clicked, dwell)) in enumerate(zip(rows, clicks), start=1)
    ]
    return QueryRecord(qid, tuple(docs))


def planted(qid, first, second, clicks):
    """Normalized-score record whose first two profiles are ``first`` and ``second``."""
    return record(qid, [first, second, [1.0] * 7, [0.0] * 7], list(clicks) + [NONE, NONE])


@pytest.fixture
def small_log():
    same = list(TABLE2_ROW)
    near = list(TABLE2_ROW)
    near[0] = 0.3040 * 0.96
    far = [0.9] * 7
    return [
        planted("irq", same, same, [SHORT, SAT]),
        planted("both", same, same, [SAT, SAT]),
        planted("quiet", same, same, [NONE, SHORT]),
        planted("near", near, same, [NONE, SAT]),
        planted("far", far, same, [NONE, SAT]),
        record("single", [same]),
    ]


@pytest.mark.parametrize(
    "event, expected",
    [
        (ClickEvent(1, True, 31.0), True),
        (ClickEvent(1, True, 30.0), False),
        (ClickEvent(1, False, 0.0), False),
    ],
)
def test_is_sat_click(event, expected):
    assert is_sat_click(event) is expected


def test_is_sat_click_negative_threshold():
    with pytest.raises(DomainError):
        is_sat_click(ClickEvent(1, True, 40.0), -1)


def test_click_event_invariants():
    with pytest.raises(ContractError):
        ClickEvent(0, False, 0.0)
    with pytest.raises(ContractError):
        ClickEvent(1, False, 120.0)
    with pytest.raises(ContractError):
        ClickEvent(1, True, -2.0)


def test_query_record_requires_contiguous_ranks():
    doc = Document("a", 1, (0.0,) * 7)
    gap = Document("b", 3, (0.0,) * 7)
    with pytest.raises(ContractError):
        QueryRecord("q", (doc, gap))
    with pytest.raises(ContractError):
        QueryRecord("q", ())


def test_query_record_orders_by_rank():
    a = Document("a", 2, (0.0,) * 7)
    b = Document("b", 1, (1.0,) * 7)
    assert [d.doc_id for d in QueryRecord("q", (a, b)).docs] == ["b", "a"]


def test_profiles_normalize_raw_scores():
    rec = record("q", [[3.0] * 7, [1.0] * 7, [2.0] * 7])
    profiles, degenerate = rec.profiles()
    assert [p["habit"] for p in profiles] == [1.0, 0.0, 0.5]
    assert not degenerate
    _, degenerate = record("q", [[5.0] * 7, [5.0] * 7]).profiles()
    assert degenerate


def test_find_subsets(small_log):
    sft = find_sft(small_log, 0.0, normalized=True)
    assert sft == {"irq", "both", "quiet"}
    sftsc = find_sftsc(small_log, sft)
    assert sftsc == {"irq", "both"}
    assert find_irq(small_log, sftsc) == {"irq"}
    assert find_sft(small_log, 0.05, normalized=True) == {"irq", "both", "quiet", "near"}


def test_find_on_empty_log():
    assert find_sft([], 0.1) == set()


def test_find_sftsc_without_clicks():
    same = list(TABLE2_ROW)
    log = [planted(f"q{i}", same, same, [NONE, NONE]) for i in range(3)]
    assert find_sftsc(log, find_sft(log, 0.0, normalized=True)) == set()


def test_find_irq_when_first_always_sat():
    same = list(TABLE2_ROW)
    log = [planted(f"q{i}", same, same, [SAT, SAT]) for i in range(3)]
    sftsc = find_sftsc(log, find_sft(log, 0.0, normalized=True))
    assert len(sftsc) == 3
    assert find_irq(log, sftsc) == set()


def test_find_sftsc_rejects_foreign_ids(small_log):
    with pytest.raises(ContractError):
        find_sftsc(small_log, {"nope"})


def test_analyze_rows_in_given_order(small_log):
    report = analyze(small_log, [0.10, 0.05, 0.0], normalized=True)
    assert [(r.criteria, r.sft, r.sftsc, r.irq) for r in report.rows] == [
        (0.10, 4, 3, 2),
        (0.05, 4, 3, 2),
        (0.0, 3, 2, 1),
    ]
    assert report.total_queries == 6
    assert report.skipped_queries == 1
    assert report.rows[2].irq_percent_of_sft == pytest.approx(100 / 3)


def test_analyze_repeated_criteria(small_log):
    report = analyze(small_log, [0.0, 0.0], normalized=True)
    assert report.rows[0] == report.rows[1]


def test_analyze_single_document_query():
    report = analyze([record("q", [[0.2] * 7])], [0.0])
    row = report.rows[0]
    assert (row.sft, row.sftsc, row.irq, row.irq_percent_of_sft) == (0, 0, 0, 0.0)
    assert report.skipped_queries == 1
    assert report.total_queries == 1


def test_analyze_counts_degenerate():
    report = analyze([record("q", [[0.2] * 7, [0.2] * 7])], [0.0])
    assert report.degenerate_queries == 1
    # every dimension maps to zero, and two all-zero profiles match
    assert report.rows[0].sft == 1


def test_analyze_rejects_duplicates_and_empty_criteria(small_log):
    with pytest.raises(ContractError):
        analyze(small_log + small_log[:1], [0.0])
    with pytest.raises(DomainError):
        analyze(small_log, [])


def test_percent_arithmetic_on_table1_counts():
    from qorder import ReportRow

    assert round(ReportRow(0.0, 170, 27, 25).irq_percent_of_sft, 2) == 14.71
    assert round(ReportRow(0.05, 238, 30, 27).irq_percent_of_sft, 2) == 11.34
    assert round(ReportRow(0.10, 309, 44, 40).irq_percent_of_sft, 2) == 12.94


def _random_log(seed, n=40):
    rng = random.Random(seed)
    base = [rng.random() for _ in range(7)]
    log = []
    for i in range(n):
        first = [rng.random() for _ in range(7)]
        if rng.random() < 0.6:
            second = [v * (1 - rng.choice([0.0, 0.02, 0.07, 0.2]) * rng.random()) for v in first]
        else:
            second = base
        clicks = [
            rng.choice([NONE, SHORT, SAT, (True, 30.0), (True, 30.5)]) for _ in range(2)
        ]
        log.append(planted(f"q{i}", first, second, clicks))
    return log


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 1), st.floats(0, 1), st.floats(0, 120), st.floats(0, 120))
def test_analysis_invariants(seed, c1, c2, t1, t2):
    log = _random_log(seed)
    lo, hi = sorted((c1, c2))
    assert find_sft(log, lo, True) <= find_sft(log, hi, True)

    report = analyze(log, [lo, hi], t1, normalized=True)
    for row in report.rows:
        assert row.irq <= row.sftsc <= row.sft <= report.total_queries

    shuffled = list(log)
    random.Random(seed).shuffle(shuffled)
    assert analyze(shuffled, [lo, hi], t1, normalized=True) == report

    t_lo, t_hi = sorted((t1, t2))
    a = analyze(log, [lo], t_lo, normalized=True).rows[0]
    b = analyze(log, [lo], t_hi, normalized=True).rows[0]
    assert b.sftsc <= a.sftsc


class TestIrrationalQueryDetector:
    def test_fit_predict(self, small_log):
        det = IrrationalQueryDetector(criteria=0.0, normalized=True)
        flags = det.fit_predict(small_log)
        assert flags.tolist() == [True, False, False, False, False, False]
        assert det.irq_ids_ == {"irq"}
        assert det.sftsc_ids_ == {"irq", "both"}
        assert det.n_skipped_ == 1

    def test_params_and_clone(self):
        det = IrrationalQueryDetector(criteria=0.05, sat_threshold=20.0)
        assert det.get_params() == {"criteria": 0.05, "sat_threshold": 20.0, "normalized": False}
        twin = clone(det).set_params(criteria=0.1)
        assert twin.criteria == 0.1 and det.criteria == 0.05

    def test_predict_agrees_with_find(self):
        log = _random_log(11, n=80)
        det = IrrationalQueryDetector(criteria=0.1, normalized=True).fit(log)
        predicted = {r.query_id for r, flag in zip(log, det.predict(log)) if flag}
        assert predicted == set(det.irq_ids_)
        assert isinstance(det.predict(log), np.ndarray)
