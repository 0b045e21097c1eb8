"""Order-effect explanation for a pair of top-ranked documents.

Both documents live in one Hilbert space.  Document 1 is taken to be judged
``dim_second`` then ``dim_first`` and document 2 ``dim_first`` then
``dim_second``; the two sequential probabilities and their ratio show how far
the order alone can move the outcome.
"""

from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_profile_array
from .exceptions import DomainError
from .hilbert import (
    BasisRepresentation,
    change_of_basis,
    ratio_of,
    sequential_projection,
    state_from_probability,
)
from .profiles import DIMENSIONS, build_profile, dimension_index


@dataclass(frozen=True)
class Explanation:
    query_id: Optional[str]
    dim_first: str
    dim_second: str
    p_forward: float
    p_reverse: float
    ratio: Optional[float]
    cross_probability: float
    degenerate: bool = False

    def to_dict(self):
        return asdict(self)


def preferred_dimension(profile):
    """Highest-scoring dimension; ties go to the earliest in HINRSTU order."""
    values = list(build_profile(profile))
    return DIMENSIONS[values.index(max(values))]


def least_dimension(profile):
    values = list(build_profile(profile))
    return DIMENSIONS[values.index(min(values))]


def explain(profile_d1, profile_d2, dim_first, dim_second, query_id=None):
    """Sequential judgment probabilities for the two documents.

    ``p_forward`` is document 1 judged on ``dim_second`` then ``dim_first``;
    ``p_reverse`` is document 2 judged on ``dim_first`` then ``dim_second``.
    """
    p1, p2 = build_profile(profile_d1), build_profile(profile_d2)
    i, j = dimension_index(dim_first), dimension_index(dim_second)
    if i == j:
        raise DomainError(f"dim_first and dim_second must differ, both are {DIMENSIONS[i]!r}")

    # the shared cross term comes from document 1's two representations
    change = change_of_basis(
        BasisRepresentation(
            DIMENSIONS[i], state_from_probability(p1[i]),
            DIMENSIONS[j], state_from_probability(p1[j]),
        )
    )
    cross = change.cross_probability
    p_forward = sequential_projection(state_from_probability(p1[j]), cross)
    p_reverse = sequential_projection(state_from_probability(p2[i]), cross)
    return Explanation(
        query_id=query_id,
        dim_first=DIMENSIONS[i],
        dim_second=DIMENSIONS[j],
        p_forward=p_forward,
        p_reverse=p_reverse,
        ratio=ratio_of(p_forward, p_reverse),
        cross_probability=cross,
    )


def explain_auto(profile_d1, profile_d2, query_id=None):
    """:func:`explain` with document 1's highest and lowest dimensions.

    A profile whose entries are all equal has no preferred dimension; it is
    explained on the first two dimensions and marked degenerate with ratio 1.
    """
    p1 = build_profile(profile_d1)
    first, second = preferred_dimension(p1), least_dimension(p1)
    if first != second:
        return explain(p1, profile_d2, first, second, query_id=query_id)
    result = explain(p1, profile_d2, DIMENSIONS[0], DIMENSIONS[1], query_id=query_id)
    return Explanation(
        query_id=query_id,
        dim_first=result.dim_first,
        dim_second=result.dim_second,
        p_forward=result.p_forward,
        p_reverse=result.p_reverse,
        ratio=1.0,
        cross_probability=result.cross_probability,
        degenerate=True,
    )


class OrderEffectExplainer(TransformerMixin, BaseEstimator):
    """Batch :func:`explain` over stacked document-pair profiles.

    Parameters
    ----------
    dims : pair of str or None, default=None
        ``(dim_first, dim_second)``.  ``None`` picks them per pair as in
        :func:`explain_auto`.

    ``transform`` takes ``X`` of shape ``(n, 14)`` (document 1's profile then
    document 2's) or ``(n, 2, 7)`` and returns ``(n, 3)`` columns
    ``p_forward, p_reverse, cross_probability``.
    """

    def __init__(self, dims=None):
        self.dims = dims

    def fit(self, X, y=None):
        pairs = self._pairs(X)
        if self.dims is not None:
            first, second = self.dims
            if dimension_index(first) == dimension_index(second):
                raise DomainError("dims must name two different dimensions")
        self.n_features_in_ = pairs.shape[1] * pairs.shape[2]
        return self

    def transform(self, X):
        pairs = self._pairs(X)
        out = np.empty((len(pairs), 3))
        for k, (d1, d2) in enumerate(pairs):
            if self.dims is None:
                e = explain_auto(d1, d2)
            else:
                e = explain(d1, d2, *self.dims)
            out[k] = (e.p_forward, e.p_reverse, e.cross_probability)
        return out

    @staticmethod
    def _pairs(X):
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 2 and arr.shape[1] == 14:
            arr = arr.reshape(-1, 2, 7)
        if arr.ndim != 3 or arr.shape[1:] != (2, 7):
            raise DomainError(f"expected shape (n, 14) or (n, 2, 7), got {arr.shape}")
        check_profile_array(arr.reshape(-1, 7))
        return arr
