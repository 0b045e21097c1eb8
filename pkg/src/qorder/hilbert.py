"""Real two-dimensional Hilbert space: states, Born rule, basis changes.

A judgment state is a unit vector ``a|X> + b|~X>`` in the orthonormal basis of
some perspective X.  Two perspectives of one state are linked by a rotation,
and projecting through them in different orders gives different probabilities.

>>> s = state_from_probability(0.90)
>>> round(born_probability(s, 0), 4)
0.9
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from ._validation import NORM_TOL, check_probability, check_unit_norm
from .exceptions import ContractError, DomainError

FIRST = 0
SECOND = 1

_OUTCOMES = {FIRST: FIRST, SECOND: SECOND, "first": FIRST, "second": SECOND}


@dataclass(frozen=True)
class StateVector:
    """Amplitudes ``(a, b)`` on the two vectors of a named orthonormal basis.

    The constructor enforces ``a**2 + b**2 == 1`` within 1e-9.  Use
    :meth:`normalized` for values typed in at limited precision.
    """

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        check_unit_norm(self.a, self.b)

    @classmethod
    def normalized(cls, a, b):
        """Rescale ``(a, b)`` onto the unit circle."""
        norm = math.hypot(a, b)
        if norm == 0 or not math.isfinite(norm):
            raise DomainError(f"cannot normalize amplitudes ({a!r}, {b!r})")
        return cls(a / norm, b / norm)

    def __iter__(self):
        yield self.a
        yield self.b

    def dot(self, other):
        return self.a * other.a + self.b * other.b


@dataclass(frozen=True)
class BasisRepresentation:
    """One state written in two bases: ``a|A> + b|B> = c|C> + d|D>``."""

    basis1_name: str
    coeffs1: StateVector
    basis2_name: str
    coeffs2: StateVector

    def __post_init__(self):
        if self.basis1_name == self.basis2_name:
            raise ContractError(f"basis names must differ, both are {self.basis1_name!r}")
        for name in ("coeffs1", "coeffs2"):
            if not isinstance(getattr(self, name), StateVector):
                raise ContractError(f"{name} must be a StateVector")


@dataclass(frozen=True)
class BasisChange:
    """The second basis ``|C>, |D>`` expressed in the first basis ``|A>, |B>``."""

    c_in_ab: StateVector
    d_in_ab: StateVector

    def __post_init__(self):
        overlap = self.c_in_ab.dot(self.d_in_ab)
        if abs(overlap) > NORM_TOL:
            raise ContractError(f"basis vectors are not orthogonal (dot = {overlap!r})")

    @property
    def cross_probability(self):
        """``|<A|C>|**2``, the transition probability between the first vectors."""
        return min(1.0, self.c_in_ab.a ** 2)


class OrderEffect(NamedTuple):
    p_ab: float
    p_ba: float
    delta: float
    ratio: Optional[float]


def state_from_probability(p):
    """Non-negative unit state ``(sqrt(p), sqrt(1 - p))`` whose Born weight is ``p``."""
    p = check_probability(p, "p")
    return StateVector(math.sqrt(p), math.sqrt(1.0 - p))


def born_probability(state, outcome=FIRST):
    """Probability of ``outcome`` (``0``/``"first"`` or ``1``/``"second"``)."""
    try:
        index = _OUTCOMES[outcome]
    except (KeyError, TypeError):
        raise DomainError(f"outcome must be first/second or 0/1, got {outcome!r}") from None
    check_unit_norm(state.a, state.b)
    return state.a ** 2 if index == FIRST else state.b ** 2


def change_of_basis(rep):
    """Express the second basis of ``rep`` in its first basis.

    The orthogonal complement of the state is fixed as ``b|A> - a|B>`` (and
    ``d|C> - c|D>``), which gives::

        |C> = (ac + bd)|A> + (bc - ad)|B>
        |D> = (ad - bc)|A> + (ac + bd)|B>

    Components may come out negative; probabilities do not depend on sign.
    """
    a, b = rep.coeffs1
    c, d = rep.coeffs2
    check_unit_norm(a, b, name="coeffs1")
    check_unit_norm(c, d, name="coeffs2")
    # the product of two unit rotations is unit up to rounding; renormalize to keep 1e-9
    return BasisChange(
        c_in_ab=StateVector.normalized(a * c + b * d, b * c - a * d),
        d_in_ab=StateVector.normalized(a * d - b * c, a * c + b * d),
    )


def sequential_projection(state, cross_prob):
    """Probability of passing ``state -> |X> -> |Y>``.

    ``state`` is written in the X basis and ``cross_prob`` is ``|<Y|X>|**2``.
    """
    cross_prob = check_probability(cross_prob, "cross_prob")
    return born_probability(state, FIRST) * cross_prob


def ratio_of(p, q):
    """``max/min`` of two probabilities, ``None`` when the smaller one is zero."""
    lo, hi = min(p, q), max(p, q)
    if lo <= 0.0:
        return None
    return hi / lo


def order_effect(state_in_a, state_in_b, names=("A", "B")):
    """Compare ``S -> A -> B`` with ``S -> B -> A`` for one state in two bases.

    Returns ``(p_ab, p_ba, delta, ratio)`` with ``delta = p_ab - p_ba`` and
    ``ratio = None`` when either probability is zero.
    """
    change = change_of_basis(BasisRepresentation(names[0], state_in_a, names[1], state_in_b))
    cross = change.cross_probability
    p_ab = sequential_projection(state_in_a, cross)
    p_ba = sequential_projection(state_in_b, cross)
    return OrderEffect(p_ab, p_ba, p_ab - p_ba, ratio_of(p_ab, p_ba))
