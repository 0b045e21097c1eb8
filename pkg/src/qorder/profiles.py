"""Dimensional profiles: normalized per-dimension relevance for one document.

Every profile is a 7-vector of probabilities in the fixed HINRSTU order
(habit, interest, novelty, reliability, scope, topicality, understandability).
"""

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_finite, check_probability
from .exceptions import DomainError

DIMENSIONS = (
    "habit",
    "interest",
    "novelty",
    "reliability",
    "scope",
    "topicality",
    "understandability",
)
N_DIMENSIONS = len(DIMENSIONS)

_ALIASES = {name: i for i, name in enumerate(DIMENSIONS)}
_ALIASES.update({name[0]: i for i, name in enumerate(DIMENSIONS)})


def dimension_index(label):
    """Index of a dimension given its name, initial, or position."""
    if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
        if 0 <= label < N_DIMENSIONS:
            return int(label)
        raise DomainError(f"dimension index out of range: {label!r}")
    try:
        return _ALIASES[str(label).strip().lower()]
    except KeyError:
        raise DomainError(
            f"unknown dimension {label!r}; expected one of {', '.join(DIMENSIONS)}"
        ) from None


def dimension_name(label):
    return DIMENSIONS[dimension_index(label)]


@dataclass(frozen=True)
class DimensionScores:
    """Raw per-dimension scores for one document, HINRSTU order."""

    scores: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.scores)
        if len(values) != N_DIMENSIONS:
            raise DomainError(f"expected {N_DIMENSIONS} scores, got {len(values)}")
        check_finite(values, "scores")
        object.__setattr__(self, "scores", values)

    def __getitem__(self, label):
        return self.scores[dimension_index(label)]

    def __iter__(self):
        return iter(self.scores)


@dataclass(frozen=True)
class DimensionalProfile:
    """Seven relevance probabilities for one (query, document) pair."""

    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != N_DIMENSIONS:
            raise DomainError(f"a profile has {N_DIMENSIONS} entries, got {len(values)}")
        for name, v in zip(DIMENSIONS, values):
            check_probability(v, name)
        object.__setattr__(self, "values", values)

    def __getitem__(self, label):
        return self.values[dimension_index(label)]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return N_DIMENSIONS

    def amplitude(self, label):
        return math.sqrt(self[label])

    def as_dict(self):
        return dict(zip(DIMENSIONS, self.values))


@dataclass(frozen=True)
class MatchingCriteria:
    """Largest relative difference allowed in any dimension (0.05 means 5%)."""

    threshold: float

    def __post_init__(self):
        object.__setattr__(self, "threshold", check_probability(self.threshold, "threshold"))


def _as_criteria(c):
    return c if isinstance(c, MatchingCriteria) else MatchingCriteria(c)


def _minmax_columns(matrix):
    """Column-wise min-max scaling; returns ``(scaled, degenerate_mask)``."""
    lo = matrix.min(axis=0)
    hi = matrix.max(axis=0)
    flat = hi == lo
    span = np.where(flat, 1.0, hi - lo)
    out = np.clip((matrix - lo) / span, 0.0, 1.0)
    out[:, flat] = 0.0
    return out, flat


def minmax_normalize(per_doc_scores, return_degenerate=False):
    """Map one dimension's raw scores across a query's documents onto [0, 1].

    When every score is equal the output is all zeros and the slice is
    degenerate; pass ``return_degenerate=True`` to get that flag back.
    """
    arr = check_finite(per_doc_scores, "per_doc_scores").ravel()
    if arr.size == 0:
        raise DomainError("cannot normalize an empty score sequence")
    out, flat = _minmax_columns(arr.reshape(-1, 1))
    out = out.ravel()
    return (out, bool(flat[0])) if return_degenerate else out


def build_profile(normalized):
    """Profile from seven already-normalized probabilities."""
    if isinstance(normalized, DimensionalProfile):
        return normalized
    return DimensionalProfile(tuple(normalized))


def relative_difference(p1, p2):
    """Component-wise ``|v2 - v1| / max(v1, v2)``, with ``0/0`` read as 0."""
    out = []
    for v1, v2 in zip(p1, p2):
        top = max(v1, v2)
        out.append(abs(v2 - v1) / top if top > 0 else 0.0)
    return tuple(out)


def max_relative_difference(p1, p2):
    return max(relative_difference(p1, p2))


def matches(p1, p2, c):
    """True when every relative difference is at most the criteria (inclusive)."""
    threshold = _as_criteria(c).threshold
    return all(r <= threshold for r in relative_difference(p1, p2))


class QueryMinMaxScaler(TransformerMixin, BaseEstimator):
    """Min-max scale each dimension across the documents of a single query.

    ``X`` has one row per document and one column per dimension.  Columns with
    no spread map to zero and are recorded in ``degenerate_``.

    Attributes
    ----------
    data_min_, data_max_ : ndarray of shape (n_features,)
    degenerate_ : ndarray of bool, shape (n_features,)
    """

    def fit(self, X, y=None):
        X = np.atleast_2d(check_finite(X, "X"))
        if X.shape[0] == 0:
            raise DomainError("cannot fit on a query without documents")
        self.data_min_ = X.min(axis=0)
        self.data_max_ = X.max(axis=0)
        self.degenerate_ = self.data_max_ == self.data_min_
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "data_min_")
        X = np.atleast_2d(check_finite(X, "X"))
        if X.shape[1] != self.n_features_in_:
            raise DomainError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        span = np.where(self.degenerate_, 1.0, self.data_max_ - self.data_min_)
        out = np.clip((X - self.data_min_) / span, 0.0, 1.0)
        out[:, self.degenerate_] = 0.0
        return out

    @property
    def degenerate(self):
        check_is_fitted(self, "degenerate_")
        return bool(self.degenerate_.any())
