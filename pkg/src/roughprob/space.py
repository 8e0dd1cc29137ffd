"""Finite universes, events, and approximation spaces.

An approximation space couples a finite universe with a set-valued map
``T`` (every element sent to a non-empty subset) and a probability measure
given by exact rational point weights.  Events are bitmasks over the
universe's stable element order: bit ``i`` is set when the ``i``-th label is
a member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    BadMeasure,
    DuplicateElement,
    EmptyImage,
    EmptyUniverse,
    MissingImage,
    MissingValue,
    UniverseMismatch,
    UnknownLabel,
)

__all__ = [
    "Universe",
    "Event",
    "ApproximationSpace",
    "build_space",
    "lower_inverse",
    "upper_inverse",
    "is_reflexive",
    "is_transitive",
    "is_exact",
    "iter_bits",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise EmptyUniverse("universe must contain at least one element")
        index: dict[str, int] = {}
        for i, label in enumerate(labels):
            if label in index:
                raise DuplicateElement(f"duplicate element {label!r}")
            index[label] = i
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def event(self, labels: Iterable[str] = ()) -> Event:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Event(self, mask)

    def empty(self) -> Event:
        return Event(self, 0)

    def full(self) -> Event:
        return Event(self, self.full_mask)

    def all_events(self) -> Iterator[Event]:
        """Every subset of the universe, ordered by bitmask value."""
        for mask in range(1 << self.n):
            yield Event(self, mask)


@dataclass(frozen=True)
class Event:
    """A subset of a universe.

    Set algebra uses the operators ``|``, ``&``, ``-`` and ``~``
    (complement); ``<=`` is the subset test.  Mixing events from different
    universes raises :class:`UniverseMismatch`.
    """

    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.universe.full_mask:
            raise ValueError(f"mask {self.mask} out of range for universe of size {self.universe.n}")

    def _check(self, other: Event) -> None:
        if not isinstance(other, Event):
            raise TypeError(f"expected Event, got {type(other).__name__}")
        if other.universe != self.universe:
            raise UniverseMismatch("events belong to different universes")

    def __or__(self, other: Event) -> Event:
        self._check(other)
        return Event(self.universe, self.mask | other.mask)

    def __and__(self, other: Event) -> Event:
        self._check(other)
        return Event(self.universe, self.mask & other.mask)

    def __sub__(self, other: Event) -> Event:
        self._check(other)
        return Event(self.universe, self.mask & ~other.mask)

    def __invert__(self) -> Event:
        return Event(self.universe, self.universe.full_mask & ~self.mask)

    complement = __invert__

    def __le__(self, other: Event) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __ge__(self, other: Event) -> bool:
        return other <= self

    def __contains__(self, label: str) -> bool:
        return bool(self.mask >> self.universe.index(label) & 1)

    def __iter__(self) -> Iterator[str]:
        return (self.universe.labels[i] for i in iter_bits(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self)

    def __str__(self) -> str:
        return "{" + ", ".join(self) + "}"


@dataclass(frozen=True)
class ApproximationSpace:
    """A universe with a set-valued map and a probability measure.

    ``images[i]`` is the bitmask of ``T(x_i)`` and ``weights[i]`` the point
    mass of ``x_i``.  Use :func:`build_space` to construct a validated
    instance from labels.
    """

    universe: Universe
    images: tuple[int, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.universe.n
        if len(self.images) != n or len(self.weights) != n:
            raise ValueError("images and weights must have one entry per element")
        for i, image in enumerate(self.images):
            if image == 0:
                raise EmptyImage(f"T({self.universe.labels[i]}) is empty")
            if image < 0 or image > self.universe.full_mask:
                raise ValueError(f"image mask {image} out of range")
        if any(w < 0 for w in self.weights):
            raise BadMeasure("negative weight")
        if sum(self.weights) != 1:
            raise BadMeasure(f"weights sum to {sum(self.weights)}, not 1")

    @property
    def n(self) -> int:
        return self.universe.n

    def image(self, label: str) -> Event:
        return Event(self.universe, self.images[self.universe.index(label)])

    def weight(self, label: str) -> Fraction:
        return self.weights[self.universe.index(label)]

    def prob_mask(self, mask: int) -> Fraction:
        return sum((self.weights[i] for i in iter_bits(mask)), Fraction(0))

    def lower_mask(self, mask: int) -> int:
        out = 0
        for i, image in enumerate(self.images):
            if image & ~mask == 0:
                out |= 1 << i
        return out

    def upper_mask(self, mask: int) -> int:
        out = 0
        for i, image in enumerate(self.images):
            if image & mask:
                out |= 1 << i
        return out

    def check(self, event: Event) -> int:
        """Return the mask of ``event``, verifying it lives on this universe."""
        if not isinstance(event, Event):
            raise TypeError(f"expected Event, got {type(event).__name__}")
        if event.universe != self.universe:
            raise UniverseMismatch("event belongs to a different universe")
        return event.mask

    def to_mapping(self) -> dict:
        """Plain-data form: ``{"elements", "map", "weights"}`` with string fractions."""
        labels = self.universe.labels
        return {
            "elements": list(labels),
            "map": {labels[i]: [labels[j] for j in iter_bits(m)] for i, m in enumerate(self.images)},
            "weights": {labels[i]: str(w) for i, w in enumerate(self.weights)},
        }


def build_space(
    elements: Iterable[str],
    mapping: Mapping[str, Iterable[str]],
    weights: Mapping[str, Fraction | int | str] | None = None,
) -> ApproximationSpace:
    """Validate labelled input and build an :class:`ApproximationSpace`.

    When ``weights`` is omitted every element gets mass ``1/n``.  Weight
    values may be anything :class:`fractions.Fraction` accepts, except
    floats, which are rejected to keep the arithmetic exact.
    """
    universe = Universe(tuple(elements))
    for label in mapping:
        if label not in universe:
            raise UnknownLabel(f"map mentions unknown element {label!r}")
    images = []
    for label in universe.labels:
        if label not in mapping:
            raise MissingImage(f"no image given for {label!r}")
        targets = list(mapping[label])
        for t in targets:
            if t not in universe:
                raise UnknownLabel(f"T({label}) mentions unknown element {t!r}")
        if not targets:
            raise EmptyImage(f"T({label}) is empty")
        images.append(universe.event(targets).mask)

    if weights is None:
        point = Fraction(1, universe.n)
        masses = tuple(point for _ in universe.labels)
    else:
        for label in weights:
            if label not in universe:
                raise UnknownLabel(f"weights mention unknown element {label!r}")
        missing = [label for label in universe.labels if label not in weights]
        if missing:
            raise MissingValue(f"no weight given for {missing[0]!r}")
        masses = tuple(_exact(weights[label]) for label in universe.labels)
    return ApproximationSpace(universe, tuple(images), masses)


def _exact(value) -> Fraction:
    if isinstance(value, float):
        raise BadMeasure(f"float weight {value!r} is not exact; pass a Fraction or string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise BadMeasure(f"bad weight {value!r}: {exc}") from None


def lower_inverse(space: ApproximationSpace, event: Event) -> Event:
    """Elements whose whole image lies inside ``event``: ``{x : T(x) ⊆ A}``."""
    return Event(space.universe, space.lower_mask(space.check(event)))


def upper_inverse(space: ApproximationSpace, event: Event) -> Event:
    """Elements whose image meets ``event``: ``{x : T(x) ∩ A ≠ ∅}``."""
    return Event(space.universe, space.upper_mask(space.check(event)))


def is_reflexive(space: ApproximationSpace) -> bool:
    return all(image >> i & 1 for i, image in enumerate(space.images))


def is_transitive(space: ApproximationSpace) -> bool:
    images = space.images
    return all(images[j] & ~image == 0 for image in images for j in iter_bits(image))


def is_exact(space: ApproximationSpace, event: Event) -> bool:
    mask = space.check(event)
    return space.lower_mask(mask) == mask and space.upper_mask(mask) == mask
