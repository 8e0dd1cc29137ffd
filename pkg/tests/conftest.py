from fractions import Fraction

import pytest
from hypothesis import strategies as st

from roughprob import build_space, build_variable

EXAMPLE_MAP = {"1": ["1"], "2": ["1", "2"], "3": ["3"], "4": ["4"], "5": ["1", "5", "6"], "6": ["1", "5", "6"]}
DIE = [str(i) for i in range(1, 7)]


@pytest.fixture
def example():
    return build_space(DIE, EXAMPLE_MAP)


@pytest.fixture
def identity_space():
    return build_space(DIE, {x: [x] for x in DIE})


@pytest.fixture
def die_variable(example):
    return build_variable(example, {x: int(x) for x in DIE})


@st.composite
def raw_spaces(draw, min_size=1, max_size=6):
    """``(T, w)`` as label -> set and label -> Fraction, for oracles and build_space alike."""
    n = draw(st.integers(min_size, max_size))
    labels = [f"x{i}" for i in range(n)]
    T = {x: set(draw(st.lists(st.sampled_from(labels), min_size=1, unique=True))) for x in labels}
    raw = draw(st.lists(st.integers(0, 5), min_size=n, max_size=n).filter(any))
    total = sum(raw)
    w = {x: Fraction(r, total) for x, r in zip(labels, raw)}
    return T, w


def space_of(raw):
    T, w = raw
    return build_space(list(T), {x: sorted(T[x]) for x in T}, w)


def subset_of(draw, labels):
    return set(draw(st.lists(st.sampled_from(sorted(labels)), unique=True)))


_results: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        _results.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _results:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_results, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
