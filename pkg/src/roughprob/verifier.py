"""Exhaustive and sampled sweeps of the law catalog.

The sweep domain for universe size ``n`` is every set-valued map on ``n``
elements, ``(2^n - 1)^n`` of them, each paired with the uniform measure and
one seeded random rational measure per configured seed.  For every space,
each law is checked on every input tuple of its domain.  Sizes above the
exhaustive limit can be covered by random sampling instead.

Reports are deterministic: spaces are visited in enumeration order and the
merge of partial reports is associative, so a parallel run yields the same
content as a serial one.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainTooLarge
from .laws import (
    CATALOG,
    CONTROLS,
    COVER_VARIANT,
    DOMAIN_INPUTS,
    LAWS,
    SUPPLEMENTARY,
    Tables,
    event_labels,
    get_law,
    render,
)
from .space import ApproximationSpace, Universe
from .variable import RoughVariable, build_variable

__all__ = [
    "EXHAUSTIVE_LIMIT",
    "LARGE_EXHAUSTIVE_LIMIT",
    "SAMPLE_LIMIT",
    "DEFAULT_AFFINE_CONSTANTS",
    "SuiteConfig",
    "LawReport",
    "universe_of",
    "enumerate_maps",
    "enumerate_spaces",
    "random_measure",
    "set_partitions",
    "default_laws",
    "run_suite",
]

EXHAUSTIVE_LIMIT = 3
LARGE_EXHAUSTIVE_LIMIT = 4
SAMPLE_LIMIT = 6

DEFAULT_AFFINE_CONSTANTS: tuple[Fraction, ...] = tuple(
    Fraction(x) for x in (0, 1, -1, 2, -2, Fraction(1, 2))
)


def universe_of(n: int) -> Universe:
    """Universe ``a, b, c, ...`` of size ``n``."""
    return Universe(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))


def enumerate_maps(n: int) -> Iterator[tuple[int, ...]]:
    """Every set-valued map on ``n`` elements, as image-mask tuples."""
    return itertools.product(range(1, 1 << n), repeat=n)


def random_measure(n: int, rng: random.Random) -> tuple[Fraction, ...]:
    """Weights ``r_i / sum(r)`` with small integer ``r_i``; zero masses allowed."""
    while True:
        raw = [rng.randint(0, 4) for _ in range(n)]
        total = sum(raw)
        if total:
            return tuple(Fraction(r, total) for r in raw)


def _measures(n: int, key: str, seeds: Sequence[int]):
    yield "uniform", tuple(Fraction(1, n) for _ in range(n))
    for seed in seeds:
        yield f"seed={seed}", random_measure(n, random.Random(f"measure:{seed}:{key}"))


def enumerate_spaces(
    n: int,
    seeds: Sequence[int] = (),
    allow_large: bool = False,
) -> Iterator[ApproximationSpace]:
    """Every set-valued map on ``n`` elements, each with the uniform measure
    followed by one random measure per seed.

    Exhaustive enumeration is limited to ``n <= 3`` (``n <= 4`` with
    ``allow_large``); larger sizes raise :class:`DomainTooLarge`.
    """
    for _, space in _exhaustive(n, seeds, allow_large):
        yield space


def _exhaustive(n: int, seeds: Sequence[int], allow_large: bool):
    limit = LARGE_EXHAUSTIVE_LIMIT if allow_large else EXHAUSTIVE_LIMIT
    if n < 1:
        raise ValueError("universe size must be >= 1")
    if n > limit:
        raise DomainTooLarge(
            f"exhaustive enumeration of n={n} would cover {(2**n - 1) ** n} maps; limit is n={limit}"
        )
    universe = universe_of(n)
    for index, images in enumerate(enumerate_maps(n)):
        for tag, weights in _measures(n, f"{n}:{index}", seeds):
            yield f"n={n} map={index} {tag}", ApproximationSpace(universe, images, weights)


def _sampled(n: int, count: int, seeds: Sequence[int]):
    if n > SAMPLE_LIMIT:
        raise DomainTooLarge(f"sampling is limited to n <= {SAMPLE_LIMIT}")
    universe = universe_of(n)
    rng = random.Random(f"maps:{n}:{','.join(map(str, seeds))}")
    for index in range(count):
        images = tuple(rng.randint(1, (1 << n) - 1) for _ in range(n))
        for tag, weights in _measures(n, f"{n}:sample{index}", seeds):
            yield f"n={n} sample={index} {tag}", ApproximationSpace(universe, images, weights)


def set_partitions(mask: int) -> Iterator[tuple[int, ...]]:
    """Every set partition of the bits of ``mask``, as tuples of block masks.

    The block holding the lowest bit comes first; the count for ``k`` bits is
    the Bell number ``B_k``.
    """
    if mask == 0:
        yield ()
        return
    low = mask & -mask
    rest = mask ^ low
    # choose the companions of the lowest bit, then partition what is left
    sub = rest
    while True:
        block = low | sub
        for tail in set_partitions(rest & ~sub):
            yield (block,) + tail
        if sub == 0:
            break
        sub = (sub - 1) & rest


@dataclass(frozen=True)
class SuiteConfig:
    n_max: int = 3
    seeds: tuple[int, ...] = (1, 2)
    variables_per_space: int = 2
    affine_constants: tuple[Fraction, ...] = DEFAULT_AFFINE_CONSTANTS
    laws: tuple[str, ...] | None = None
    include_cover_variant: bool = False
    max_counterexamples: int = 3
    allow_large: bool = False
    sample: int = 0
    sample_inputs: int = 64
    workers: int = 1

    def validate(self) -> None:
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        exhaustive = LARGE_EXHAUSTIVE_LIMIT if self.allow_large else EXHAUSTIVE_LIMIT
        if self.n_max > exhaustive and self.sample <= 0:
            raise DomainTooLarge(
                f"n_max={self.n_max} exceeds the exhaustive limit {exhaustive}; enable sampling"
            )
        if self.n_max > SAMPLE_LIMIT:
            raise DomainTooLarge(f"n_max={self.n_max} exceeds the sampling limit {SAMPLE_LIMIT}")
        for law_id in self.laws or ():
            get_law(law_id)

    def law_ids(self) -> list[str]:
        if self.laws is not None:
            return list(self.laws)
        return default_laws()

    def role(self, law_id: str) -> str:
        if law_id == COVER_VARIANT and self.include_cover_variant:
            return "law"
        return LAWS[law_id].role


def default_laws() -> list[str]:
    return CATALOG + SUPPLEMENTARY + CONTROLS


@dataclass
class LawReport:
    law: str
    role: str
    instances_checked: int = 0
    vacuous: int = 0
    violations: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def exercised(self) -> int:
        return self.instances_checked - self.vacuous

    @property
    def status(self) -> str:
        """``pass``, ``fail`` or ``vacuous`` for laws; ``fired`` or
        ``silent`` for controls, which are expected to fail."""
        if self.role == "control":
            return "fired" if self.violations else "silent"
        if self.violations:
            return "fail"
        return "pass" if self.exercised else "vacuous"

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "fired")

    def merge(self, other: LawReport, limit: int) -> None:
        self.instances_checked += other.instances_checked
        self.vacuous += other.vacuous
        self.violations += other.violations
        room = limit - len(self.counterexamples)
        if room > 0:
            self.counterexamples.extend(other.counterexamples[:room])
        self.elapsed += other.elapsed

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "law": self.law,
            "role": self.role,
            "statement": LAWS[self.law].statement,
            "status": self.status,
            "instances_checked": self.instances_checked,
            "vacuous": self.vacuous,
            "violations": self.violations,
            "counterexamples": self.counterexamples,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _variables(space: ApproximationSpace, key: str, count: int, seeds: Sequence[int]) -> list[RoughVariable]:
    labels = space.universe.labels
    out = [build_variable(space, {label: i + 1 for i, label in enumerate(labels)})]
    rng = random.Random(f"variables:{key}:{','.join(map(str, seeds))}")
    for _ in range(count):
        out.append(build_variable(space, {label: rng.randint(-3, 3) for label in labels}))
    return out


def _inputs(domain: str, t: Tables, variables, config: SuiteConfig, rng: random.Random | None):
    """Input tuples for one law domain on one space.

    ``rng`` switches event-quantified domains from full enumeration to
    ``config.sample_inputs`` random draws.
    """
    size = t.full + 1
    if domain == "space":
        return [()]
    if domain in ("event", "pair", "triple"):
        arity = {"event": 1, "pair": 2, "triple": 3}[domain]
        if rng is None:
            return itertools.product(range(size), repeat=arity)
        return [tuple(rng.randrange(size) for _ in range(arity)) for _ in range(config.sample_inputs)]
    if domain == "partition":
        partitions = list(set_partitions(t.full))
        events = range(size) if rng is None else [rng.randrange(size) for _ in range(config.sample_inputs)]
        return [(a, blocks) for a in events for blocks in partitions]
    if domain == "cover":
        if rng is None:
            return [(a, (b1, b2)) for a in range(size) for b1 in range(size) for b2 in range(size)
                    if b1 | b2 == t.full]
        out = []
        for _ in range(config.sample_inputs):
            b1 = rng.randrange(size)
            out.append((rng.randrange(size), (b1, (rng.randrange(size) | t.full & ~b1))))
        return out
    if domain == "variable":
        return [(var,) for var in variables]
    if domain == "affine":
        ks = config.affine_constants
        return [(var, a, b) for var in variables for a in ks for b in ks]
    raise ValueError(f"unknown domain {domain!r}")


def _render_inputs(domain_names, values, space: ApproximationSpace) -> dict:
    labels = space.universe.labels
    out = {}
    for name, value in zip(domain_names, values):
        if name in ("partition", "cover"):
            out[name] = [event_labels(b, labels) for b in value]
        elif name == "U":
            out[name] = value.to_mapping()
        elif name in ("a", "b"):
            out[name] = str(value)
        else:
            out[name] = event_labels(value, labels)
    return out


def _sweep(items: list[tuple[str, ApproximationSpace, bool]], config: SuiteConfig) -> dict[str, LawReport]:
    """Check every configured law on a batch of spaces.

    ``items`` are ``(space id, space, sampled)`` triples in enumeration order.
    """
    law_ids = config.law_ids()
    reports = {law_id: LawReport(law_id, config.role(law_id)) for law_id in law_ids}
    needs_variables = any(LAWS[i].domain in ("variable", "affine") for i in law_ids)
    for space_id, space, sampled in items:
        t = Tables(space)
        variables = (
            _variables(space, space_id, config.variables_per_space, config.seeds) if needs_variables else []
        )
        for law_id in law_ids:
            law = LAWS[law_id]
            report = reports[law_id]
            rng = random.Random(f"inputs:{space_id}:{law_id}") if sampled else None
            fn = law.fn
            started = time.perf_counter()
            checked = vacuous = 0
            for values in _inputs(law.domain, t, variables, config, rng):
                verdict = fn(t, *values)
                checked += 1
                status = verdict.status
                if status == "pass":
                    continue
                if status == "vacuous":
                    vacuous += 1
                    continue
                report.violations += 1
                if len(report.counterexamples) < config.max_counterexamples:
                    labels = space.universe.labels
                    report.counterexamples.append({
                        "space_id": space_id,
                        "space": space.to_mapping(),
                        "inputs": _render_inputs(DOMAIN_INPUTS[law.domain], values, space),
                        "lhs": render(verdict.lhs, labels),
                        "rhs": render(verdict.rhs, labels),
                    })
            report.instances_checked += checked
            report.vacuous += vacuous
            report.elapsed += time.perf_counter() - started
    return reports


def _space_items(config: SuiteConfig) -> Iterator[tuple[str, ApproximationSpace, bool]]:
    exhaustive = LARGE_EXHAUSTIVE_LIMIT if config.allow_large else EXHAUSTIVE_LIMIT
    for n in range(1, config.n_max + 1):
        if n <= exhaustive:
            for space_id, space in _exhaustive(n, config.seeds, config.allow_large):
                yield space_id, space, False
        else:
            for space_id, space in _sampled(n, config.sample, config.seeds):
                yield space_id, space, True


def _sweep_batch(args):
    items, config = args
    return _sweep(items, config)


def _batches(items, size: int):
    batch = []
    for item in items:
        batch.append(item)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def run_suite(config: SuiteConfig = SuiteConfig()) -> list[LawReport]:
    """Sweep the configured laws and return one report per law, in law order.

    With ``config.workers > 1`` batches of spaces are checked in worker
    processes; results are merged in enumeration order, so the report
    content does not depend on the worker count.
    """
    config.validate()
    law_ids = config.law_ids()
    if not law_ids:
        return []
    merged = {law_id: LawReport(law_id, config.role(law_id)) for law_id in law_ids}
    items = _space_items(config)
    if config.workers > 1:
        jobs = ((batch, config) for batch in _batches(items, 128))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            partials = pool.map(_sweep_batch, jobs)
            for partial in partials:
                for law_id in law_ids:
                    merged[law_id].merge(partial[law_id], config.max_counterexamples)
    else:
        partial = _sweep(list(items), config)
        for law_id in law_ids:
            merged[law_id].merge(partial[law_id], config.max_counterexamples)
    return [merged[law_id] for law_id in law_ids]
