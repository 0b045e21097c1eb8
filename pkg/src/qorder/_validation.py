"""Input validation helpers used across the estimators and functions."""

import math

import numpy as np

from .exceptions import ContractError, DomainError

NORM_TOL = 1e-9


def check_probability(p, name="p"):
    """Return ``p`` as a float, raising :class:`DomainError` unless 0 <= p <= 1."""
    try:
        value = float(p)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {p!r}") from None
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
    return value


def check_finite(values, name="values"):
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {list(np.ravel(values))!r}")
    return arr


def check_unit_norm(a, b, tol=NORM_TOL, name="state"):
    norm_sq = a * a + b * b
    if not math.isfinite(norm_sq) or abs(norm_sq - 1.0) > tol:
        raise ContractError(
            f"{name} must be unit norm within {tol:g}; got a^2 + b^2 = {norm_sq!r}"
        )


def check_profile_array(X, name="X"):
    """Validate a 2-d array of profile rows (n, 7) with entries in [0, 1]."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != 7:
        raise DomainError(f"{name} must have shape (n, 7), got {arr.shape}")
    if not np.all(np.isfinite(arr)) or arr.min(initial=0.0) < 0 or arr.max(initial=0.0) > 1:
        raise DomainError(f"{name} entries must be probabilities in [0, 1]")
    return arr
