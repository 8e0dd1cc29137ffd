"""Lower, upper, rough and conditional probabilities of events."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import ZeroConditioningMass
from .space import ApproximationSpace, Event

__all__ = [
    "RoughPair",
    "prob",
    "lower_prob",
    "upper_prob",
    "rough_prob",
    "cond_prob",
    "cond_lower",
    "cond_upper",
]


class RoughPair(NamedTuple):
    """An ordered ``(lower, upper)`` pair of exact rationals.

    Compares equal to a plain 2-tuple with the same values.
    """

    lower: Fraction
    upper: Fraction

    def __str__(self) -> str:
        return f"({self.lower}, {self.upper})"

    @property
    def collapsed(self) -> bool:
        return self.lower == self.upper


def prob(space: ApproximationSpace, event: Event) -> Fraction:
    """Classical probability ``P(A)``."""
    return space.prob_mask(space.check(event))


def lower_prob(space: ApproximationSpace, event: Event) -> Fraction:
    return space.prob_mask(space.lower_mask(space.check(event)))


def upper_prob(space: ApproximationSpace, event: Event) -> Fraction:
    return space.prob_mask(space.upper_mask(space.check(event)))


def rough_prob(space: ApproximationSpace, event: Event) -> RoughPair:
    return RoughPair(lower_prob(space, event), upper_prob(space, event))


def cond_prob(space: ApproximationSpace, event: Event, given: Event) -> Fraction:
    """Classical ``P(A|B)``; raises :class:`ZeroConditioningMass` if ``P(B) = 0``."""
    denominator = prob(space, given)
    if denominator == 0:
        raise ZeroConditioningMass(f"P({given}) = 0")
    return prob(space, event & given) / denominator


def cond_lower(space: ApproximationSpace, event: Event, given: Event) -> Fraction:
    """Lower conditional probability, the ratio of lower probabilities of
    ``A ∩ B`` and ``B``.

    Only defined when the lower probability of ``given`` is non-zero;
    otherwise :class:`ZeroConditioningMass` is raised.
    """
    denominator = lower_prob(space, given)
    if denominator == 0:
        raise ZeroConditioningMass(f"lower probability of {given} is 0")
    return lower_prob(space, event & given) / denominator


def cond_upper(space: ApproximationSpace, event: Event, given: Event) -> Fraction:
    """Upper conditional probability; see :func:`cond_lower`."""
    denominator = upper_prob(space, given)
    if denominator == 0:
        raise ZeroConditioningMass(f"upper probability of {given} is 0")
    return upper_prob(space, event & given) / denominator
