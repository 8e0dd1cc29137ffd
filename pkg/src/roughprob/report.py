"""Plain-text rendering of event approximations, variable reports and
verifier results.  All output is deterministic for fixed input."""

from __future__ import annotations

import json
from fractions import Fraction

from .laws import LAWS
from .measure import RoughPair, prob, rough_prob
from .space import (
    ApproximationSpace,
    Event,
    is_exact,
    is_reflexive,
    is_transitive,
    lower_inverse,
    upper_inverse,
)
from .variable import (
    RoughVariable,
    cdf,
    cdf_steps,
    expectation,
    mass_totals,
    raw_moment,
    singleton_table,
    variance_direct,
    variance_formula,
)
from .verifier import LawReport

__all__ = ["IdentityViolation", "render_approx", "render_variable", "render_verify", "reference_notes"]


class IdentityViolation(AssertionError):
    """Closed-form and direct variance disagree; indicates a library defect."""


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _table(rows: list[list[str]], indent: str = "  ") -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [indent + "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def render_approx(space: ApproximationSpace, event: Event) -> str:
    lines = [
        f"A       = {event}",
        f"T+(A)   = {lower_inverse(space, event)}",
        f"T-1(A)  = {upper_inverse(space, event)}",
        f"exact   = {str(is_exact(space, event)).lower()}",
        f"P(A)    = {prob(space, event)}",
        f"P*(A)   = {rough_prob(space, event)}",
    ]
    return "\n".join(lines) + "\n"


# Published reference values for the six-element example space with the
# identity variable, where they disagree with what the definitions give.
_EXAMPLE_IMAGES = ("1", "12", "3", "4", "156", "156")


def _is_reference_example(var: RoughVariable) -> bool:
    space = var.space
    labels = space.universe.labels
    if labels != ("1", "2", "3", "4", "5", "6"):
        return False
    images = tuple("".join(space.image(x)) for x in labels)
    return (
        images == _EXAMPLE_IMAGES
        and all(w == Fraction(1, 6) for w in space.weights)
        and var.values == tuple(Fraction(i) for i in range(1, 7))
    )


def reference_notes(var: RoughVariable, mode: str) -> list[str]:
    """Notes on published values this variable's report does not reproduce."""
    if not _is_reference_example(var):
        return []
    notes = []
    if mode == "singleton-sum":
        notes += [
            "published lower distribution piece 2/4 on [3, 4) is a misprint; the accumulated value is 1/3 (= 2/6)",
            "published upper distribution piece 8/6 on [4, 5) is a misprint; the accumulated value is 7/6"
            " (its neighbours 1 and 9/6 force a step of 1/6 at u = 4)",
        ]
    direct = variance_direct(var)
    notes.append(
        f"published rough variance (0.4, 13.75) is NOT reproduced; the mass-weighted definition"
        f" and the closed form both give {direct}"
    )
    return notes


def _interval(start: Fraction | None, end: Fraction | None) -> str:
    left = "-inf < u" if start is None else f"{start} <= u"
    right = "" if end is None else f" < {end}"
    return left + right


def _steps(pieces: list[tuple[Fraction | None, Fraction]]) -> list[list[str]]:
    rows = []
    for i, (start, value) in enumerate(pieces):
        end = pieces[i + 1][0] if i + 1 < len(pieces) else None
        rows.append([_interval(start, end), str(value)])
    return rows


def render_variable(var: RoughVariable, name: str = "U", mode: str = "singleton-sum") -> str:
    """Singleton table, piecewise distribution function, moments and variance.

    Raises :class:`IdentityViolation` when the closed-form variance differs
    from the direct weighted sum.
    """
    space = var.space
    out = [
        f"variable {name} on {space.n} elements"
        f" (T reflexive: {_yes(is_reflexive(space))}, transitive: {_yes(is_transitive(space))})",
        "",
        "singleton masses",
    ]
    rows = [["u", "lower", "upper"]]
    rows += [[str(u), str(lo), str(hi)] for u, lo, hi in singleton_table(var)]
    c, d = mass_totals(var)
    rows.append(["sum", str(c), str(d)])
    out += _table(rows)

    lower, upper = cdf_steps(var, mode)
    out += ["", f"distribution function ({mode} mode)", "  lower:"]
    out += _table(_steps(lower), "    ")
    out += ["  upper:"]
    out += _table(_steps(upper), "    ")
    out += ["  at each level:"]
    out += _table([["u", "F*(u)"]] + [[str(u), str(cdf(var, u, mode))] for u in var.levels], "    ")

    direct, formula = variance_direct(var), variance_formula(var)
    if direct != formula:
        raise IdentityViolation(f"variance mismatch: direct {direct}, closed form {formula}")
    summary = [
        [f"E*({name})", f"= {expectation(var)}"],
        [f"E*({name}^2)", f"= {raw_moment(var, 2)}"],
        ["(c, d)", f"= {RoughPair(c, d)}"],
        [f"V*({name}) direct", f"= {direct}"],
        [f"V*({name}) closed form", f"= {formula}"],
    ]
    out += [""] + _table(summary, "")
    notes = reference_notes(var, mode)
    if notes:
        out += ["", "notes:"] + [f"  - {note}" for note in notes]
    return "\n".join(out) + "\n"


def render_verify(reports: list[LawReport], as_json: bool = False, timings: bool = False) -> str:
    if as_json:
        return json.dumps([r.to_dict(timings) for r in reports], indent=2, ensure_ascii=False) + "\n"
    header = ["law", "role", "status", "checked", "vacuous", "violations"]
    if timings:
        header.append("seconds")
    rows = [header]
    for r in reports:
        row = [r.law, r.role, r.status, str(r.instances_checked), str(r.vacuous), str(r.violations)]
        if timings:
            row.append(f"{r.elapsed:.3f}")
        rows.append(row)
    out = _table(rows, "")
    laws = [r for r in reports if r.role == "law"]
    controls = [r for r in reports if r.role == "control"]
    passed = sum(r.status == "pass" for r in laws)
    fired = sum(r.status == "fired" for r in controls)
    out += [
        "",
        f"laws: {passed}/{len(laws)} pass; controls: {fired}/{len(controls)} fired",
    ]
    failing = [r for r in laws if r.status == "fail"]
    for r in failing:
        out += ["", f"counterexamples to {r.law}: {LAWS[r.law].statement}"]
        out += [json.dumps(ce, ensure_ascii=False, sort_keys=True) for ce in r.counterexamples]
    for r in controls:
        if r.counterexamples:
            out += ["", f"control {r.law} ({LAWS[r.law].statement}), first counterexample:"]
            out.append(json.dumps(r.counterexamples[0], ensure_ascii=False, sort_keys=True))
    for r in laws:
        if r.status == "vacuous":
            out.append(f"warning: {r.law} was never exercised (all instances vacuous)")
    for r in controls:
        if r.status == "silent":
            out.append(f"warning: control {r.law} found no counterexample")
    return "\n".join(out) + "\n"
