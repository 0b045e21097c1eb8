"""Seeded synthetic query logs, optionally calibrated to exact SFT/SFTSC/IRQ counts.

Calibration plants queries in nested bands.  For criteria ``c0 > c1 > ... > ck``
the band of ``ci`` holds queries whose first two profiles match at ``ci`` but
not at ``c(i+1)``; the innermost band matches at ``ck`` itself.  Click patterns
inside each band fix how many of its queries are SFTSC and IRQ, so every target
row is hit at once.

All randomness comes from one ``numpy.random.Generator`` stream, so a seed
fully determines the log.  Every dimension of every query already has a 0 and
a 1 across its documents (when it has at least two), which makes the scores a
fixed point of min-max normalization: the log analyzes the same whether its
scores are treated as raw or as normalized.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import ConfigurationError
from .profiles import DIMENSIONS, N_DIMENSIONS

TABLE1_TOTAL_QUERIES = 152941
TABLE1_ROWS = (
    (0.10, 309, 44, 40),
    (0.05, 238, 30, 27),
    (0.0, 170, 27, 25),
)

# planted pairs keep values away from 0 so relative differences are well scaled
_LOW, _HIGH = 0.05, 0.95
_DECIMALS = 4
_MAX_REDRAWS = 100

# click roles of the first two documents
_RANDOM, _NOT_SECOND, _IRQ, _BOTH = range(4)


@dataclass
class SynthConfig:
    """Parameters for :func:`generate`.

    ``target_rows`` holds ``(criteria, sft, sftsc, irq)`` tuples with strictly
    decreasing criteria.  Without targets, a ``similar_fraction`` of queries
    get a rank-2 document that is a jittered copy of rank 1.
    """

    seed: int = 0
    total_queries: int = 1000
    docs_per_query: tuple = (4, 10)
    target_rows: Optional[tuple] = None
    sat_threshold: float = 30.0
    dwell_gap: float = 1.0
    sat_dwell_mean: float = 95.0
    sat_dwell_sigma: float = 60.0
    short_dwell_mean: float = 10.0
    short_dwell_sigma: float = 8.0
    click_rate: float = 0.25
    sat_rate: float = 0.5
    similar_fraction: float = 0.05
    jitter: float = 0.15

    @classmethod
    def table1(cls, seed=0, **overrides):
        """Preset reproducing the published query-log counts."""
        return cls(seed=seed, total_queries=TABLE1_TOTAL_QUERIES, target_rows=TABLE1_ROWS, **overrides)

    def validate(self):
        if self.total_queries < 0:
            raise ConfigurationError(f"total_queries must be >= 0, got {self.total_queries}")
        lo, hi = self.docs_per_query
        if not (1 <= lo <= hi):
            raise ConfigurationError(f"docs_per_query must satisfy 1 <= min <= max, got {self.docs_per_query}")
        if self.sat_threshold < 0:
            raise ConfigurationError(f"sat_threshold must be >= 0, got {self.sat_threshold}")
        if self.dwell_gap <= 0:
            raise ConfigurationError(f"dwell_gap must be > 0, got {self.dwell_gap}")
        for name in ("click_rate", "sat_rate", "similar_fraction", "jitter"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1], got {value}")
        if self.target_rows is not None:
            _band_plan(self.target_rows, self.total_queries)
        return self


def _band_plan(target_rows, total):
    """Split cumulative target rows into per-band ``(criteria, lower, n, sftsc, irq)``."""
    rows = [tuple(r) for r in target_rows]
    if not rows:
        raise ConfigurationError("target_rows must not be empty")
    for c, sft, sftsc, irq in rows:
        if not 0.0 <= c <= 1.0:
            raise ConfigurationError(f"criteria must lie in [0, 1], got {c}")
        if not 0 <= irq <= sftsc <= sft <= total:
            raise ConfigurationError(
                f"row {c}: need 0 <= irq <= sftsc <= sft <= total_queries, "
                f"got irq={irq}, sftsc={sftsc}, sft={sft}, total={total}"
            )
    for outer, inner in zip(rows, rows[1:]):
        if not inner[0] < outer[0]:
            raise ConfigurationError("criteria must be strictly decreasing across target rows")

    bands = []
    for k, (c, sft, sftsc, irq) in enumerate(rows):
        if k + 1 < len(rows):
            lower, in_sft, in_sftsc, in_irq = rows[k + 1]
        else:
            lower, in_sft, in_sftsc, in_irq = None, 0, 0, 0
        n, sc, ir = sft - in_sft, sftsc - in_sftsc, irq - in_irq
        if n < 0 or sc < 0 or ir < 0:
            raise ConfigurationError(
                f"rows {c} and {lower} are not nested: a looser criteria cannot have smaller counts"
            )
        if not ir <= sc <= n:
            raise ConfigurationError(
                f"band ({lower}, {c}] needs irq <= sftsc <= sft, got {ir}, {sc}, {n}"
            )
        bands.append((c, lower, n, sc, ir))

    c_max, sft_max = rows[0][0], rows[0][1]
    if c_max >= 1.0 and sft_max < total:
        raise ConfigurationError("every document pair matches at criteria 1.0, so sft must equal total_queries")
    return bands


def _band_difference(c, lower, rng):
    """Relative difference strictly inside ``(lower, c]``; 0 for an exact band."""
    if c == 0.0:
        return 0.0
    lo = 0.0 if lower is None else lower
    return lo + (c - lo) * rng.uniform(0.3, 0.7)


def _plan_roles(config, rng):
    """Per query: ``(click role, pair kind, relative difference, gap window)``.

    Pair kinds: ``None`` leaves the first two documents unconstrained,
    ``"similar"`` jitters rank 2 from rank 1, ``"band"`` plants a pair inside
    a calibration band, ``"far"`` keeps the pair apart at every criteria.
    """
    n = config.total_queries
    if config.target_rows is None:
        similar = rng.random(n) < config.similar_fraction
        return [(_RANDOM, "similar" if s else None, None, None) for s in similar]

    plan = []
    for c, lower, size, sc, ir in _band_plan(config.target_rows, n):
        roles = [_IRQ] * ir + [_BOTH] * (sc - ir) + [_NOT_SECOND] * (size - sc)
        plan.extend((role, "band", _band_difference(c, lower, rng), (lower, c)) for role in roles)
    c_max = config.target_rows[0][0]
    for _ in range(n - len(plan)):
        r = c_max + (1.0 - c_max) * rng.uniform(0.3, 0.9)
        plan.append((_RANDOM, "far", r, (c_max, None)))
    order = rng.permutation(len(plan))
    return [plan[i] for i in order]


def _relative_gap(u, v):
    gap = 0.0
    for x, y in zip(u.tolist(), v.tolist()):
        top = max(x, y)
        if top > 0:
            gap = max(gap, abs(x - y) / top)
    return gap


def _in_window(gap, window):
    lower, upper = window
    if upper is not None and gap > upper:
        return False
    if lower is not None and gap <= lower:
        return False
    return True


class _Dwell:
    def __init__(self, config, rng):
        self.config, self.rng = config, rng
        self.short_ok = config.sat_threshold - config.dwell_gap >= 0

    def sat(self):
        c = self.config
        floor = c.sat_threshold + c.dwell_gap
        value = max(floor, self.rng.normal(c.sat_dwell_mean, c.sat_dwell_sigma))
        return float(np.ceil(value * 10) / 10)

    def short(self):
        c = self.config
        ceiling = c.sat_threshold - c.dwell_gap
        value = min(max(0.0, self.rng.normal(c.short_dwell_mean, c.short_dwell_sigma)), ceiling)
        return float(np.floor(value * 10) / 10)

    def random_click(self):
        c = self.config
        if self.rng.random() >= c.click_rate:
            return False, 0.0
        if self.rng.random() < c.sat_rate or not self.short_ok:
            return True, self.sat()
        return True, self.short()

    def not_sat(self):
        if self.short_ok and self.rng.random() < 0.5:
            return True, self.short()
        return False, 0.0


def _pair(kind, r, window, n, config, rng):
    scores = rng.uniform(_LOW, _HIGH, size=(n, N_DIMENSIONS)).round(_DECIMALS)
    if kind is None:
        return scores
    scores[1] = scores[0]
    if kind == "similar":
        if rng.random() >= 1 / 3:
            shrink = 1.0 - rng.uniform(0.0, config.jitter, size=N_DIMENSIONS)
            scores[1] = (scores[0] * shrink).round(_DECIMALS)
    elif r > 0:
        k = int(rng.integers(N_DIMENSIONS))
        shrunk = round(scores[0, k] * (1.0 - r), _DECIMALS)
        if rng.random() < 0.5:
            scores[1, k] = shrunk
        else:
            scores[1, k], scores[0, k] = scores[0, k], shrunk
    return scores


def _query(qid, plan_entry, config, rng, dwell):
    role, kind, r, window = plan_entry
    lo, hi = config.docs_per_query
    n = int(rng.integers(lo, hi + 1))
    if kind is not None:
        n = max(n, 4)

    scores = _pair(kind, r, window, n, config, rng)
    if window is not None:
        # 4-decimal rounding can nudge a planted gap; redraw until it lands
        for _ in range(_MAX_REDRAWS):
            if _in_window(_relative_gap(scores[0], scores[1]), window):
                break
            scores = _pair(kind, r, window, n, config, rng)
        else:
            raise ConfigurationError(
                f"cannot plant a document pair with relative difference in {window} "
                f"at {_DECIMALS}-decimal precision"
            )

    # extremes go outside the first two documents when those are constrained
    pool = np.arange(2, n) if kind is not None else np.arange(n)
    if n >= 2:
        m = len(pool)
        cols = np.arange(N_DIMENSIONS)
        top = rng.integers(m, size=N_DIMENSIONS)
        bottom = rng.integers(m - 1, size=N_DIMENSIONS)
        bottom += bottom >= top
        scores[pool[top], cols] = 1.0
        scores[pool[bottom], cols] = 0.0
    else:
        scores[:] = 0.0

    clicks = [dwell.random_click() for _ in range(n)]
    if role == _IRQ:
        clicks[0], clicks[1] = dwell.not_sat(), (True, dwell.sat())
    elif role == _BOTH:
        clicks[0], clicks[1] = (True, dwell.sat()), (True, dwell.sat())
    elif role == _NOT_SECOND:
        clicks[1] = dwell.not_sat()

    docs = []
    for rank, (row, (clicked, seconds)) in enumerate(zip(scores.tolist(), clicks), start=1):
        docs.append({
            "doc_id": f"{qid}-d{rank}",
            "rank": rank,
            "scores": dict(zip(DIMENSIONS, row)),
            "clicked": clicked,
            "dwell_seconds": seconds,
        })
    return {"query_id": qid, "docs": docs}


def iter_records(config):
    """Yield log records as plain JSON-ready dicts."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    dwell = _Dwell(config, rng)
    plan = _plan_roles(config, rng)
    width = max(6, len(str(len(plan))))
    for i, entry in enumerate(plan, start=1):
        yield _query(f"q{i:0{width}d}", entry, config, rng, dwell)


def generate(config):
    """Generate a list of :class:`~qorder.logs.QueryRecord` for ``config``."""
    from .io import record_from_dict

    return [record_from_dict(d) for d in iter_records(config)]
