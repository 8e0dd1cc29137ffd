"""Catalog of checkable laws.

Each law is a predicate over precomputed per-space tables plus a tuple of
inputs drawn from the law's *domain*:

``space``      no inputs
``event``      one event ``A``
``pair``       events ``A, B``
``triple``     events ``A, B, C``
``partition``  an event ``A`` and a set partition of the universe
``cover``      an event ``A`` and a pair of events whose union is the universe
``variable``   a random variable ``U``
``affine``     a random variable ``U`` and rational constants ``a, b``

Events are bitmasks.  A law returns a :class:`Verdict`; instances whose
hypotheses do not hold return :data:`VACUOUS`.  Both sides of every
relation are evaluated with exact rationals.

Laws with role ``"control"`` are deliberately false statements.  A sweep
must find counterexamples to them, which shows the checker is not
trivially green.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .errors import UnknownLaw
from .space import ApproximationSpace, is_reflexive, is_transitive, iter_bits
from .variable import (
    RoughVariable,
    affine_expectation,
    affine_variance_formula,
    variance_formula,
)

__all__ = [
    "Law",
    "Verdict",
    "VACUOUS",
    "Tables",
    "LAWS",
    "CATALOG",
    "SUPPLEMENTARY",
    "CONTROLS",
    "COVER_VARIANT",
    "DOMAIN_INPUTS",
    "get_law",
    "check_law",
    "render",
    "event_labels",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class SetValue(NamedTuple):
    """An event mask appearing as one side of a structural law."""

    mask: int


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass" | "fail" | "vacuous"
    lhs: object = None
    rhs: object = None

    @property
    def holds(self) -> bool:
        return self.status != "fail"

    @property
    def vacuous(self) -> bool:
        return self.status == "vacuous"


VACUOUS = Verdict("vacuous")


def _verdict(holds: bool, lhs, rhs) -> Verdict:
    return Verdict("pass" if holds else "fail", lhs, rhs)


class Tables:
    """Every lower/upper inverse and probability of one space, indexed by mask."""

    __slots__ = (
        "space", "n", "full", "lo", "up", "p", "pl", "pu",
        "reflexive", "transitive", "_cl", "_cu", "_masses", "_formulas",
    )

    def __init__(self, space: ApproximationSpace):
        self.space = space
        self.n = n = space.n
        self.full = full = (1 << n) - 1
        weights = space.weights
        p = [ZERO] * (full + 1)
        for m in range(1, full + 1):
            low = m & -m
            p[m] = p[m ^ low] + weights[low.bit_length() - 1]
        self.p = p
        self.lo = [space.lower_mask(m) for m in range(full + 1)]
        self.up = [space.upper_mask(m) for m in range(full + 1)]
        self.pl = [p[m] for m in self.lo]
        self.pu = [p[m] for m in self.up]
        self.reflexive = is_reflexive(space)
        self.transitive = is_transitive(space)
        self._cl: dict[tuple[int, int], Fraction] = {}
        self._cu: dict[tuple[int, int], Fraction] = {}
        self._masses: dict[tuple[int, ...], tuple] = {}
        self._formulas: dict[tuple, object] = {}

    def formula(self, fn, var: RoughVariable, *args):
        """``fn(var, *args)``, shared between the lower and upper law of a pair."""
        key = (fn, id(var), *args)
        value = self._formulas.get(key)
        if value is None:
            value = self._formulas[key] = fn(var, *args)
        return value

    def exact(self, m: int) -> bool:
        return self.lo[m] == m and self.up[m] == m

    def cond_lower(self, a: int, b: int) -> Fraction:
        """Lower conditional of ``a`` given ``b``; caller guarantees ``pl[b] != 0``."""
        key = (a & b, b)
        value = self._cl.get(key)
        if value is None:
            value = self._cl[key] = self.pl[a & b] / self.pl[b]
        return value

    def cond_upper(self, a: int, b: int) -> Fraction:
        key = (a & b, b)
        value = self._cu.get(key)
        if value is None:
            value = self._cu[key] = self.pu[a & b] / self.pu[b]
        return value


@dataclass(frozen=True)
class Law:
    id: str
    domain: str
    statement: str
    fn: Callable[..., Verdict]
    role: str = "law"  # "law" | "control"


LAWS: dict[str, Law] = {}
CATALOG: list[str] = []
SUPPLEMENTARY: list[str] = []
CONTROLS: list[str] = []

DOMAIN_INPUTS = {
    "space": (),
    "event": ("A",),
    "pair": ("A", "B"),
    "triple": ("A", "B", "C"),
    "partition": ("A", "partition"),
    "cover": ("A", "cover"),
    "variable": ("U",),
    "affine": ("U", "a", "b"),
}


def _law(law_id: str, domain: str, statement: str, group: list[str] = CATALOG, role: str = "law"):
    def register(fn):
        LAWS[law_id] = Law(law_id, domain, statement, fn, role)
        group.append(law_id)
        return fn

    return register


# -- probability bounds and additivity ------------------------------------


@_law("P2.1.1", "space", "lower(∅) = 0 = upper(∅)")
def _empty_zero(t: Tables) -> Verdict:
    lhs = (t.pl[0], t.pu[0])
    return _verdict(lhs == (ZERO, ZERO), lhs, (ZERO, ZERO))


@_law("P2.1.2", "space", "lower(X) = 1 = upper(X)")
def _full_one(t: Tables) -> Verdict:
    lhs = (t.pl[t.full], t.pu[t.full])
    return _verdict(lhs == (ONE, ONE), lhs, (ONE, ONE))


@_law("P2.1.3", "pair", "upper(A∪B) <= upper(A) + upper(B) - upper(A∩B)")
def _upper_subadditive(t: Tables, a: int, b: int) -> Verdict:
    pu = t.pu
    lhs, rhs = pu[a | b], pu[a] + pu[b] - pu[a & b]
    return _verdict(lhs <= rhs, lhs, rhs)


@_law("P2.1.4", "pair", "lower(A∪B) >= lower(A) + lower(B) - lower(A∩B)")
def _lower_superadditive(t: Tables, a: int, b: int) -> Verdict:
    pl = t.pl
    lhs, rhs = pl[a | b], pl[a] + pl[b] - pl[a & b]
    return _verdict(lhs >= rhs, lhs, rhs)


@_law("P2.1.5", "event", "lower(Aᶜ) = 1 - upper(A)")
def _conjugate(t: Tables, a: int) -> Verdict:
    lhs, rhs = t.pl[t.full & ~a], 1 - t.pu[a]
    return _verdict(lhs == rhs, lhs, rhs)


@_law("P2.1.6", "pair", "lower(A-B) <= lower(A) - lower(A∩B)")
def _lower_difference(t: Tables, a: int, b: int) -> Verdict:
    pl = t.pl
    lhs, rhs = pl[a & ~b], pl[a] - pl[a & b]
    return _verdict(lhs <= rhs, lhs, rhs)


@_law("P2.1.7", "event", "lower(A) <= upper(A)")
def _lower_below_upper(t: Tables, a: int) -> Verdict:
    lhs, rhs = t.pl[a], t.pu[a]
    return _verdict(lhs <= rhs, lhs, rhs)


@_law("P2.1.8", "pair", "A ⊆ B implies lower(A) <= lower(B) and upper(A) <= upper(B)")
def _prob_monotone(t: Tables, a: int, b: int) -> Verdict:
    if a & ~b:
        return VACUOUS
    lhs, rhs = (t.pl[a], t.pu[a]), (t.pl[b], t.pu[b])
    return _verdict(lhs[0] <= rhs[0] and lhs[1] <= rhs[1], lhs, rhs)


# -- comparison with the classical measure ---------------------------------


@_law("L2.3.1", "event", "T reflexive implies lower(A) <= P(A) <= upper(A)")
def _reflexive_sandwich(t: Tables, a: int) -> Verdict:
    if not t.reflexive:
        return VACUOUS
    lhs, rhs = t.pl[a], t.p[a]
    return _verdict(t.pl[a] <= t.p[a] <= t.pu[a], (lhs, rhs), (rhs, t.pu[a]))


@_law("L2.3.2", "event", "T reflexive and transitive implies lower(T⁺(A)) = lower(A) and upper(T⁻¹(A)) = upper(A)")
def _preorder_fixed(t: Tables, a: int) -> Verdict:
    if not (t.reflexive and t.transitive):
        return VACUOUS
    lhs = (t.pl[t.lo[a]], t.pu[t.up[a]])
    rhs = (t.pl[a], t.pu[a])
    return _verdict(lhs == rhs, lhs, rhs)


@_law("L2.3.3", "event", "A exact implies lower(A) = P(A) = upper(A)")
def _exact_collapse(t: Tables, a: int) -> Verdict:
    if not t.exact(a):
        return VACUOUS
    lhs, rhs = (t.pl[a], t.pu[a]), (t.p[a], t.p[a])
    return _verdict(lhs == rhs, lhs, rhs)


# -- conditional probability ------------------------------------------------


@_law("L2.6.1", "event", "lower(A|A) = 1 and upper(A|A) = 1 where defined")
def _self_conditional(t: Tables, a: int) -> Verdict:
    lhs, rhs = [], []
    if t.pl[a] != 0:
        lhs.append(t.cond_lower(a, a))
        rhs.append(ONE)
    if t.pu[a] != 0:
        lhs.append(t.cond_upper(a, a))
        rhs.append(ONE)
    if not lhs:
        return VACUOUS
    return _verdict(lhs == rhs, tuple(lhs), tuple(rhs))


@_law("L2.6.2", "event", "lower(∅|A) = 0 and upper(∅|A) = 0 where defined")
def _empty_conditional(t: Tables, a: int) -> Verdict:
    lhs = []
    if t.pl[a] != 0:
        lhs.append(t.cond_lower(0, a))
    if t.pu[a] != 0:
        lhs.append(t.cond_upper(0, a))
    if not lhs:
        return VACUOUS
    rhs = [ZERO] * len(lhs)
    return _verdict(lhs == rhs, tuple(lhs), tuple(rhs))


@_law("L2.6.3", "event", "lower(A|X) = lower(A) and upper(A|X) = upper(A)")
def _condition_on_universe(t: Tables, a: int) -> Verdict:
    lhs = (t.cond_lower(a, t.full), t.cond_upper(a, t.full))
    rhs = (t.pl[a], t.pu[a])
    return _verdict(lhs == rhs, lhs, rhs)


@_law("L2.6.4", "pair", "lower(Aᶜ|B) <= 1 - lower(A|B) when lower(B) != 0")
def _lower_conditional_complement(t: Tables, a: int, b: int) -> Verdict:
    if t.pl[b] == 0:
        return VACUOUS
    lhs, rhs = t.cond_lower(t.full & ~a, b), 1 - t.cond_lower(a, b)
    return _verdict(lhs <= rhs, lhs, rhs)


@_law("L2.6.5", "triple", "lower(A∪B|C) >= lower(A|C) + lower(B|C) - lower(A∩B|C) when lower(C) != 0")
def _lower_conditional_union(t: Tables, a: int, b: int, c: int) -> Verdict:
    if t.pl[c] == 0:
        return VACUOUS
    cl = t.cond_lower
    lhs, rhs = cl(a | b, c), cl(a, c) + cl(b, c) - cl(a & b, c)
    return _verdict(lhs >= rhs, lhs, rhs)


@_law("L2.6.6", "pair", "upper(Aᶜ|B) >= 1 - upper(A|B) when upper(B) != 0")
def _upper_conditional_complement(t: Tables, a: int, b: int) -> Verdict:
    if t.pu[b] == 0:
        return VACUOUS
    lhs, rhs = t.cond_upper(t.full & ~a, b), 1 - t.cond_upper(a, b)
    return _verdict(lhs >= rhs, lhs, rhs)


@_law("L2.6.7", "triple", "upper(A∪B|C) <= upper(A|C) + upper(B|C) - upper(A∩B|C) when upper(C) != 0")
def _upper_conditional_union(t: Tables, a: int, b: int, c: int) -> Verdict:
    if t.pu[c] == 0:
        return VACUOUS
    cu = t.cond_upper
    lhs, rhs = cu(a | b, c), cu(a, c) + cu(b, c) - cu(a & b, c)
    return _verdict(lhs <= rhs, lhs, rhs)


def _lower_total(t: Tables, a: int, blocks) -> Verdict:
    if any(t.pl[b] == 0 for b in blocks):
        return VACUOUS
    lhs = t.pl[a]
    rhs = sum((t.cond_lower(a, b) * t.pl[b] for b in blocks), ZERO)
    return _verdict(lhs >= rhs, lhs, rhs)


def _upper_total(t: Tables, a: int, blocks) -> Verdict:
    if any(t.pu[b] == 0 for b in blocks):
        return VACUOUS
    lhs = t.pu[a]
    rhs = sum((t.cond_upper(a, b) * t.pu[b] for b in blocks), ZERO)
    return _verdict(lhs <= rhs, lhs, rhs)


_law("L2.6.8", "partition",
     "lower(A) >= Σ lower(A|B_i) lower(B_i) over a partition {B_i} with every lower(B_i) != 0")(_lower_total)
_law("L2.6.9", "partition",
     "upper(A) <= Σ upper(A|B_i) upper(B_i) over a partition {B_i} with every upper(B_i) != 0")(_upper_total)


@_law("L2.6.10", "pair", "T transitive, B exact, P(B) != 0 implies lower(A|B) <= P(A|B) <= upper(A|B)")
def _transitive_exact_conditional(t: Tables, a: int, b: int) -> Verdict:
    if not (t.transitive and t.exact(b) and t.p[b] != 0):
        return VACUOUS
    return _conditional_sandwich(t, a, b)


def _conditional_sandwich(t: Tables, a: int, b: int) -> Verdict:
    # exact b with P(b) != 0 forces lower(b) = upper(b) = P(b) != 0
    lower, upper = t.cond_lower(a, b), t.cond_upper(a, b)
    classical = t.p[a & b] / t.p[b]
    return _verdict(lower <= classical <= upper, (lower, classical), (classical, upper))


# -- rough variables --------------------------------------------------------


def _direct_masses(t: Tables, var: RoughVariable):
    """Levels, lower and upper masses and the two means, recomputed from the
    tables rather than taken from ``var``."""
    key = tuple(pre.mask for pre in var.preimages)
    cached = t._masses.get(key)
    if cached is None or cached[0] != var.levels:
        levels = var.levels
        lower = [t.pl[m] for m in key]
        upper = [t.pu[m] for m in key]
        cached = (levels, lower, upper, _weighted(levels, lower, _identity), _weighted(levels, upper, _identity))
        t._masses[key] = cached
    return cached


def _identity(u: Fraction) -> Fraction:
    return u


def _weighted(levels, masses, f) -> Fraction:
    return sum((f(u) * m for u, m in zip(levels, masses) if m), ZERO)


@_law("T2.14", "affine", "lower E(aU+b) = a lower E(U) + b c with c = Σ lower(U=u_k) in [0, 1]")
def _lower_affine_mean(t: Tables, var: RoughVariable, a: Fraction, b: Fraction) -> Verdict:
    levels, lower, _, _, _ = _direct_masses(t, var)
    c = sum(lower, ZERO)
    lhs = _weighted(levels, lower, lambda u: a * u + b)
    rhs = t.formula(affine_expectation, var, a, b).lower
    return _verdict(lhs == rhs and 0 <= c <= 1, (lhs, c), (rhs, "[0, 1]"))


@_law("T2.15", "affine", "upper E(aU+b) = a upper E(U) + b d with d = Σ upper(U=u_k) in [1, n]")
def _upper_affine_mean(t: Tables, var: RoughVariable, a: Fraction, b: Fraction) -> Verdict:
    levels, _, upper, _, _ = _direct_masses(t, var)
    d = sum(upper, ZERO)
    lhs = _weighted(levels, upper, lambda u: a * u + b)
    rhs = t.formula(affine_expectation, var, a, b).upper
    return _verdict(lhs == rhs and 1 <= d <= len(levels), (lhs, d), (rhs, f"[1, {len(levels)}]"))


def _centered(levels, masses, shift: Fraction, scale: Fraction = ONE, offset: Fraction = ZERO) -> Fraction:
    total = ZERO
    for u, m in zip(levels, masses):
        if m:
            dev = scale * u + offset - shift
            total += dev * dev * m
    return total


@_law("T2.18", "variable", "lower V(U) = lower E(U²) - (2 - c) lower E(U)²")
def _lower_variance(t: Tables, var: RoughVariable) -> Verdict:
    levels, lower, _, mean, _ = _direct_masses(t, var)
    lhs, rhs = _centered(levels, lower, mean), t.formula(variance_formula, var).lower
    return _verdict(lhs == rhs, lhs, rhs)


@_law("T2.19", "variable", "upper V(U) = upper E(U²) - (2 - d) upper E(U)²")
def _upper_variance(t: Tables, var: RoughVariable) -> Verdict:
    levels, _, upper, _, mean = _direct_masses(t, var)
    lhs, rhs = _centered(levels, upper, mean), t.formula(variance_formula, var).upper
    return _verdict(lhs == rhs, lhs, rhs)


@_law("T2.20", "affine", "Σ (a u_k + b - lower E(U))² lower(U=u_k) = a² E(U²) - (2a - c) E(U)² + 2b(a - c) E(U) + b² c")
def _lower_affine_variance(t: Tables, var: RoughVariable, a: Fraction, b: Fraction) -> Verdict:
    levels, lower, _, mean, _ = _direct_masses(t, var)
    lhs, rhs = _centered(levels, lower, mean, a, b), t.formula(affine_variance_formula, var, a, b).lower
    return _verdict(lhs == rhs, lhs, rhs)


@_law("T2.21", "affine", "Σ (a u_k + b - upper E(U))² upper(U=u_k) = a² E(U²) - (2a - d) E(U)² + 2b(a - d) E(U) + b² d")
def _upper_affine_variance(t: Tables, var: RoughVariable, a: Fraction, b: Fraction) -> Verdict:
    levels, _, upper, _, mean = _direct_masses(t, var)
    lhs, rhs = _centered(levels, upper, mean, a, b), t.formula(affine_variance_formula, var, a, b).upper
    return _verdict(lhs == rhs, lhs, rhs)


# -- structural laws of the two operators ----------------------------------


@_law("DUAL", "event", "T⁺(Aᶜ) = (T⁻¹(A))ᶜ")
def _duality(t: Tables, a: int) -> Verdict:
    lhs, rhs = t.lo[t.full & ~a], t.full & ~t.up[a]
    return _verdict(lhs == rhs, SetValue(lhs), SetValue(rhs))


@_law("IDEMPOTENT", "event", "T reflexive and transitive implies T⁻¹(T⁻¹(A)) = T⁻¹(A) and T⁺(T⁺(A)) = T⁺(A)")
def _idempotent(t: Tables, a: int) -> Verdict:
    if not (t.reflexive and t.transitive):
        return VACUOUS
    lhs = (SetValue(t.up[t.up[a]]), SetValue(t.lo[t.lo[a]]))
    rhs = (SetValue(t.up[a]), SetValue(t.lo[a]))
    return _verdict(lhs == rhs, lhs, rhs)


@_law("MONOTONE", "pair", "A ⊆ B implies T⁺(A) ⊆ T⁺(B) and T⁻¹(A) ⊆ T⁻¹(B)")
def _operator_monotone(t: Tables, a: int, b: int) -> Verdict:
    if a & ~b:
        return VACUOUS
    lhs = (SetValue(t.lo[a]), SetValue(t.up[a]))
    rhs = (SetValue(t.lo[b]), SetValue(t.up[b]))
    return _verdict(t.lo[a] & ~t.lo[b] == 0 and t.up[a] & ~t.up[b] == 0, lhs, rhs)


@_law("CONTAIN", "event", "T⁺(A) ⊆ T⁻¹(A)")
def _contain(t: Tables, a: int) -> Verdict:
    lhs, rhs = t.lo[a], t.up[a]
    return _verdict(lhs & ~rhs == 0, SetValue(lhs), SetValue(rhs))


# -- supplementary and controls ---------------------------------------------


@_law("L2.6.10R", "pair", "T reflexive, B exact, P(B) != 0 implies lower(A|B) <= P(A|B) <= upper(A|B)",
      group=SUPPLEMENTARY)
def _reflexive_exact_conditional(t: Tables, a: int, b: int) -> Verdict:
    if not (t.reflexive and t.exact(b) and t.p[b] != 0):
        return VACUOUS
    return _conditional_sandwich(t, a, b)


COVER_VARIANT = "L2.6.8-COVER"
_law(COVER_VARIANT, "cover",
     "lower(A) >= Σ lower(A|B_i) lower(B_i) over a two-set cover B_1 ∪ B_2 = X with every lower(B_i) != 0",
     group=CONTROLS, role="control")(_lower_total)


@_law("NEG-SUPERADD", "pair", "upper(A∪B) >= upper(A) + upper(B)", group=CONTROLS, role="control")
def _fabricated_superadditive(t: Tables, a: int, b: int) -> Verdict:
    lhs, rhs = t.pu[a | b], t.pu[a] + t.pu[b]
    return _verdict(lhs >= rhs, lhs, rhs)


def get_law(law_id: str) -> Law:
    try:
        return LAWS[law_id]
    except KeyError:
        raise UnknownLaw(f"unknown law {law_id!r}") from None


def check_law(law_id: str, space: ApproximationSpace, inputs: tuple = ()) -> Verdict:
    """Evaluate one law on one space for one input tuple.

    ``inputs`` follows the law's domain: events are :class:`Event`
    objects, a partition or cover is a sequence of events, and variable
    laws take a :class:`RoughVariable` followed (for affine laws) by the
    constants ``a`` and ``b``.
    """
    law = get_law(law_id)
    expected = DOMAIN_INPUTS[law.domain]
    if len(inputs) != len(expected):
        raise ValueError(f"{law_id} expects inputs {expected}, got {len(inputs)} values")
    converted = []
    for name, value in zip(expected, inputs):
        if name in ("partition", "cover"):
            converted.append(tuple(space.check(e) for e in value))
        elif name in ("a", "b"):
            converted.append(Fraction(value))
        elif name == "U":
            if value.space != space:
                raise ValueError("variable belongs to a different space")
            converted.append(value)
        else:
            converted.append(space.check(value))
    if law.domain == "partition":
        blocks = converted[1]
        union = 0
        for block in blocks:
            if block == 0 or block & union:
                raise ValueError("partition blocks must be non-empty and pairwise disjoint")
            union |= block
        if union != space.universe.full_mask:
            raise ValueError("partition blocks must cover the universe")
    if law.domain == "cover":
        union = 0
        for block in converted[1]:
            union |= block
        if union != space.universe.full_mask:
            raise ValueError("cover must have the universe as its union")
    return law.fn(Tables(space), *converted)


def render(value, labels: tuple[str, ...]) -> str:
    """Deterministic text for one side of a verdict."""
    if isinstance(value, SetValue):
        return "{" + ", ".join(labels[i] for i in iter_bits(value.mask)) + "}"
    if isinstance(value, tuple):
        return "(" + ", ".join(render(v, labels) for v in value) + ")"
    return str(value)


def event_labels(mask: int, labels: tuple[str, ...]) -> list[str]:
    return [labels[i] for i in iter_bits(mask)]
