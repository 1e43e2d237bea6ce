"""Spectral calculus on periodic Bessel potential spaces H^s_p(T^n).

Truncated Fourier coefficient fields model periodic distributions; on top of
them the package provides the lifting operator, H^s_p norms, duality
pairings, pointwise products, exponent predicates, and multiplier-norm
experiments comparing the operator norm of multiplication against the
intersection norm max(|u|_{H^(-t)_q}, |u|_{H^(-s)_p'}).
"""

from .calculus import (
    SpaceIndex,
    action,
    bessel_weight,
    bessel_weights,
    duality_pair,
    hs_norm,
    lift,
    pointwise_product,
)
from .coeffio import CoeffFileError, parse_coeff_file, write_coeff_file
from .conditions import (
    ConditionVerdict,
    conjugate_exponent,
    embedding_holds,
    strichartz_case,
)
from .generators import gen_distribution
from .lattice import (
    GridFunction,
    Lattice,
    SpectralField,
    analyze,
    conj_field,
    constant_field,
    delta_field,
    is_real_valued,
    linear_combine,
    lp_norm,
    make_lattice,
    real_part_field,
    restrict_field,
    synthesize,
    tree_sum,
)
from .multipliers import (
    HypothesisError,
    MultiplierProblem,
    MultiplierReport,
    PowerIterationError,
    default_test_family,
    equivalence_report,
    intersection_norm,
    multiplier_matrix,
    multiplier_norm_l2,
    multiplier_norm_sampled,
    power_iteration_norm,
    symmetry_check,
)
from .verify import CheckResult, VerifyContext, run_suite

__all__ = [
    "CheckResult",
    "CoeffFileError",
    "ConditionVerdict",
    "GridFunction",
    "HypothesisError",
    "Lattice",
    "MultiplierProblem",
    "MultiplierReport",
    "PowerIterationError",
    "SpaceIndex",
    "SpectralField",
    "VerifyContext",
    "action",
    "analyze",
    "bessel_weight",
    "bessel_weights",
    "conj_field",
    "conjugate_exponent",
    "constant_field",
    "default_test_family",
    "delta_field",
    "duality_pair",
    "embedding_holds",
    "equivalence_report",
    "gen_distribution",
    "hs_norm",
    "intersection_norm",
    "is_real_valued",
    "lift",
    "linear_combine",
    "lp_norm",
    "make_lattice",
    "multiplier_matrix",
    "multiplier_norm_l2",
    "multiplier_norm_sampled",
    "parse_coeff_file",
    "pointwise_product",
    "power_iteration_norm",
    "real_part_field",
    "restrict_field",
    "run_suite",
    "strichartz_case",
    "symmetry_check",
    "synthesize",
    "tree_sum",
    "write_coeff_file",
]

__version__ = "0.1.0"
