"""Two-sided descents on finite Coxeter groups and their normal approximation."""

from .coxeter import CoxeterGroup, IrreducibleType, coxeter_matrix, make_irreducible, parse_group
from .distributions import (
    DiscreteDistribution,
    Moments,
    convolve,
    exact_t_distribution,
    moments,
    product_t_distribution,
    standardize,
)
from .elements import (
    GroupElement,
    des,
    descent_set,
    descent_set_by_length,
    generators,
    identity,
    inverse,
    length,
    longest_element,
    multiply,
    two_sided_descent,
)
from .enumeration import ElementTable, enumerate_group
from .harness import ExperimentReport, SequenceSpec, emit_report, parse_spec, run_experiment
from .sampling import SeededRng, sample_batch, sample_uniform
from .wasserstein import d2_discrete, d2_to_normal, normal_partial_moments

__version__ = "0.1.0"

__all__ = [
    "convolve",
    "coxeter_matrix",
    "CoxeterGroup",
    "d2_discrete",
    "d2_to_normal",
    "des",
    "descent_set",
    "descent_set_by_length",
    "DiscreteDistribution",
    "ElementTable",
    "emit_report",
    "enumerate_group",
    "exact_t_distribution",
    "ExperimentReport",
    "generators",
    "GroupElement",
    "identity",
    "inverse",
    "IrreducibleType",
    "length",
    "longest_element",
    "make_irreducible",
    "Moments",
    "moments",
    "multiply",
    "normal_partial_moments",
    "parse_group",
    "parse_spec",
    "product_t_distribution",
    "run_experiment",
    "sample_batch",
    "sample_uniform",
    "SeededRng",
    "SequenceSpec",
    "standardize",
    "two_sided_descent",
]
