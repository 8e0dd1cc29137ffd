"""Rough random variables: singleton masses, distribution functions,
expectation and variance.

A random variable assigns an exact rational value to each element.  Its
distinct values (levels) are sorted ascending; for each level the preimage
event gets a lower and an upper mass.  These singleton masses are not a
probability distribution: their lower sum ``c`` lies in ``[0, 1]`` and their
upper sum ``d`` in ``[1, number of levels]``.  Expectation and variance are
weighted sums against the masses and inherit that non-normalisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Literal, Mapping

from .errors import MissingValue, SpaceError, UnknownLabel
from .measure import RoughPair, lower_prob, upper_prob
from .space import ApproximationSpace, Event

__all__ = [
    "RoughVariable",
    "CdfMode",
    "CDF_MODES",
    "build_variable",
    "singleton_table",
    "mass_totals",
    "cdf",
    "cdf_steps",
    "expectation",
    "raw_moment",
    "affine_expectation",
    "variance_direct",
    "variance_formula",
    "affine_variance_formula",
]

CdfMode = Literal["singleton-sum", "event"]
CDF_MODES: tuple[str, ...] = ("singleton-sum", "event")


@dataclass(frozen=True)
class RoughVariable:
    space: ApproximationSpace
    values: tuple[Fraction, ...]
    levels: tuple[Fraction, ...]
    preimages: tuple[Event, ...]
    lower_mass: tuple[Fraction, ...]
    upper_mass: tuple[Fraction, ...]

    def value(self, label: str) -> Fraction:
        return self.values[self.space.universe.index(label)]

    def to_mapping(self) -> dict[str, str]:
        return {label: str(v) for label, v in zip(self.space.universe.labels, self.values)}

    @cached_property
    def _moments(self) -> tuple[RoughPair, RoughPair, RoughPair]:
        # (mass totals, first raw moment, second raw moment)
        return mass_totals(self), raw_moment(self, 1), raw_moment(self, 2)


def build_variable(space: ApproximationSpace, values: Mapping[str, Fraction | int | str]) -> RoughVariable:
    """Materialise a random variable and its singleton masses."""
    universe = space.universe
    for label in values:
        if label not in universe:
            raise UnknownLabel(f"variable mentions unknown element {label!r}")
    assigned = []
    for label in universe.labels:
        if label not in values:
            raise MissingValue(f"no value given for {label!r}")
        value = values[label]
        if isinstance(value, float):
            raise SpaceError(f"float value {value!r} for {label!r} is not exact")
        assigned.append(Fraction(value))

    levels = tuple(sorted(set(assigned)))
    masks = {level: 0 for level in levels}
    for i, value in enumerate(assigned):
        masks[value] |= 1 << i
    preimages = tuple(Event(universe, masks[level]) for level in levels)
    return RoughVariable(
        space=space,
        values=tuple(assigned),
        levels=levels,
        preimages=preimages,
        lower_mass=tuple(lower_prob(space, e) for e in preimages),
        upper_mass=tuple(upper_prob(space, e) for e in preimages),
    )


def singleton_table(var: RoughVariable) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Rows ``(u_k, lower mass, upper mass)`` in ascending level order."""
    return list(zip(var.levels, var.lower_mass, var.upper_mass))


def mass_totals(var: RoughVariable) -> RoughPair:
    """``(c, d)``: the sums of the lower and of the upper singleton masses."""
    return RoughPair(sum(var.lower_mass, Fraction(0)), sum(var.upper_mass, Fraction(0)))


def _check_mode(mode: str) -> None:
    if mode not in CDF_MODES:
        raise ValueError(f"unknown cdf mode {mode!r}; expected one of {', '.join(CDF_MODES)}")


def cdf(var: RoughVariable, u: Fraction | int, mode: CdfMode = "singleton-sum") -> RoughPair:
    """Rough distribution function at ``u``.

    ``"event"`` applies the lower and upper probability to the event
    ``{x : U(x) <= u}``, so both components stay in ``[0, 1]``.
    ``"singleton-sum"`` accumulates the singleton masses of every level
    ``<= u``; its upper component can exceed 1.
    """
    _check_mode(mode)
    u = Fraction(u)
    if mode == "event":
        mask = 0
        for level, pre in zip(var.levels, var.preimages):
            if level <= u:
                mask |= pre.mask
        below = Event(var.space.universe, mask)
        return RoughPair(lower_prob(var.space, below), upper_prob(var.space, below))
    lo = hi = Fraction(0)
    for level, pl, pu in zip(var.levels, var.lower_mass, var.upper_mass):
        if level > u:
            break
        lo += pl
        hi += pu
    return RoughPair(lo, hi)


def cdf_steps(
    var: RoughVariable, mode: CdfMode = "singleton-sum"
) -> tuple[list[tuple[Fraction | None, Fraction]], list[tuple[Fraction | None, Fraction]]]:
    """Piecewise-constant form of the lower and upper distribution functions.

    Each side is a list of ``(start, value)`` pieces; a piece holds from
    ``start`` (inclusive) to the next piece's start.  The first piece starts
    at ``None`` (minus infinity) with value 0.  Adjacent equal pieces are
    merged, so a side only breaks where its own value changes.
    """
    _check_mode(mode)
    lower: list[tuple[Fraction | None, Fraction]] = [(None, Fraction(0))]
    upper: list[tuple[Fraction | None, Fraction]] = [(None, Fraction(0))]
    for level in var.levels:
        pair = cdf(var, level, mode)
        if pair.lower != lower[-1][1]:
            lower.append((level, pair.lower))
        if pair.upper != upper[-1][1]:
            upper.append((level, pair.upper))
    return lower, upper


def raw_moment(var: RoughVariable, k: int) -> RoughPair:
    """``(sum u_k^k * lower mass, sum u_k^k * upper mass)`` for ``k >= 1``."""
    if k < 1:
        raise ValueError("moment order must be >= 1")
    powers = [level**k for level in var.levels]
    return RoughPair(
        sum((p * m for p, m in zip(powers, var.lower_mass)), Fraction(0)),
        sum((p * m for p, m in zip(powers, var.upper_mass)), Fraction(0)),
    )


def expectation(var: RoughVariable) -> RoughPair:
    return var._moments[1]


def affine_expectation(var: RoughVariable, a: Fraction | int, b: Fraction | int) -> RoughPair:
    """Closed form for the expectation of ``aU + b`` over the original masses:
    ``(a E_lower + b c, a E_upper + b d)``.

    ``aU + b`` is not rebuilt as a fresh variable, so with ``a = 0`` the
    lower value is ``b c`` rather than ``b``.
    """
    a, b = Fraction(a), Fraction(b)
    (c, d), mean, _ = var._moments
    return RoughPair(a * mean.lower + b * c, a * mean.upper + b * d)


def variance_direct(var: RoughVariable) -> RoughPair:
    """Mass-weighted squared deviation about each side's own expectation."""
    mean = expectation(var)
    return RoughPair(
        sum(((u - mean.lower) ** 2 * m for u, m in zip(var.levels, var.lower_mass)), Fraction(0)),
        sum(((u - mean.upper) ** 2 * m for u, m in zip(var.levels, var.upper_mass)), Fraction(0)),
    )


def variance_formula(var: RoughVariable) -> RoughPair:
    """Closed form ``E(U^2) - (2 - c) E(U)^2`` per side (``d`` on the upper side)."""
    (c, d), mean, second = var._moments
    return RoughPair(
        second.lower - (2 - c) * mean.lower**2,
        second.upper - (2 - d) * mean.upper**2,
    )


def affine_variance_formula(var: RoughVariable, a: Fraction | int, b: Fraction | int) -> RoughPair:
    """Closed form for the mass-weighted square of ``aU + b - E(U)``.

    Per side, with ``m`` that side's expectation of ``U``, ``s`` its
    second raw moment and ``c`` its mass total::

        a^2 s - (2a - c) m^2 + 2b (a - c) m + b^2 c

    The deviation is taken about ``E(U)``, not about ``E(aU + b)``.
    """
    a, b = Fraction(a), Fraction(b)
    totals, mean, second = var._moments

    def side(s: Fraction, m: Fraction, c: Fraction) -> Fraction:
        return a * a * s - (2 * a - c) * m * m + 2 * b * (a - c) * m + b * b * c

    return RoughPair(
        side(second.lower, mean.lower, totals.lower),
        side(second.upper, mean.upper, totals.upper),
    )
