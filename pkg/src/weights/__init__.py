"""Distributions on cells and the weight functions derived from them."""

from weights.distribution import Distribution, independent_simplicial_distribution
from weights.factorization import factorization_test
from weights.functions import (
    IndependentModel,
    WeightFunction,
    conditional_weights,
    empty_normalized,
    independent_sequence_weights,
    independent_simplicial_weights,
    moment_map,
    raw_weights,
)

__all__ = [
    "Distribution",
    "independent_simplicial_distribution",
    "factorization_test",
    "IndependentModel",
    "WeightFunction",
    "conditional_weights",
    "empty_normalized",
    "independent_sequence_weights",
    "independent_simplicial_weights",
    "moment_map",
    "raw_weights",
]
