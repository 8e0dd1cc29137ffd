"""Exact rough probability on finite approximation spaces."""

from .errors import *  # noqa: F401,F403
from .measure import (
    RoughPair,
    cond_lower,
    cond_prob,
    cond_upper,
    lower_prob,
    prob,
    rough_prob,
    upper_prob,
)
from .space import (
    ApproximationSpace,
    Event,
    Universe,
    build_space,
    is_exact,
    is_reflexive,
    is_transitive,
    lower_inverse,
    upper_inverse,
)
from .variable import (
    RoughVariable,
    affine_expectation,
    affine_variance_formula,
    build_variable,
    cdf,
    cdf_steps,
    expectation,
    mass_totals,
    raw_moment,
    singleton_table,
    variance_direct,
    variance_formula,
)

__version__ = "0.1.0"
