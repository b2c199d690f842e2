import numpy as np
import pytest

from complexes.cells import Cell
from complexes.index import build_full_sequence_complex, build_simplicial_complex, full_simplex
from core.errors import (
    DegenerateSliceError,
    InputError,
    ModelError,
    NormalizationError,
    PositivityError,
    PreconditionError,
)
from weights.distribution import Distribution, independent_simplicial_distribution
from weights.empirical import build_vocabulary, fit_empirical, tokenize_corpus
from weights.factorization import factorization_test
from weights.functions import (
    IndependentModel,
    Provenance,
    WeightFunction,
    conditional_weights,
    empty_normalized,
    independent_sequence_weights,
    independent_simplicial_weights,
    moment_map,
    raw_weights,
)


def uniform_distribution(complex):
    cells = [cell for n in complex.dims() for cell in complex.cells(n)]
    return Distribution(complex, {cell: 1 / len(cells) for cell in cells})


def test_distribution_must_sum_to_one():
    complex = build_full_sequence_complex(2, max_dim=0)
    with pytest.raises(InputError):
        Distribution(complex, {Cell.sequence([0]): 0.5})
    with pytest.raises(InputError):
        Distribution(complex, {Cell.sequence([0]): 1.5, Cell.sequence([1]): -0.5})
    with pytest.raises(InputError):
        Distribution(complex, {Cell.sequence([0, 1, 0]): 1.0})


def test_conditional_weights_uniform():
    complex = build_full_sequence_complex(2, max_dim=0)
    w = conditional_weights(complex, uniform_distribution(complex))
    assert np.allclose(w[1], 0.25)
    assert w[-1][0] == 1.0
    assert w.provenance is Provenance.CONDITIONAL


def test_conditional_weights_sum_to_one_per_dimension(rng):
    complex = build_full_sequence_complex(3, max_dim=1)
    cells = [cell for n in complex.dims() for cell in complex.cells(n)]
    probs = rng.uniform(0.1, 1.0, len(cells))
    probs /= probs.sum()
    w = conditional_weights(complex, Distribution(complex, dict(zip(cells, probs))))
    for n, total in w.dimension_sums().items():
        assert total == pytest.approx(1.0, abs=1e-12)


def test_conditional_weights_degenerate_slice():
    complex = build_full_sequence_complex(2, max_dim=0)
    p = Distribution(complex, {Cell.sequence([0]): 0.5, Cell.sequence([1]): 0.5})
    with pytest.raises(DegenerateSliceError):
        conditional_weights(complex, p)


def test_moment_map_of_independent_distribution():
    complex = full_simplex(2)
    p = independent_simplicial_distribution(complex, [0.3, 0.6])
    m = moment_map(complex, p)
    assert m.weight(Cell.empty()) == pytest.approx(1.0)
    assert m.weight(Cell.simplex([0, 1])) == pytest.approx(0.18)
    expected = independent_simplicial_weights(complex, [0.3, 0.6])
    for n in complex.dims():
        assert np.allclose(m[n], expected[n], atol=1e-14)


def test_moment_map_point_mass_is_not_positive():
    complex = full_simplex(2)
    p = Distribution(complex, {Cell.simplex([0]): 1.0})
    with pytest.raises(PositivityError):
        moment_map(complex, p)


def test_empty_normalized_of_independent_distribution():
    complex = full_simplex(3)
    probs = np.array([0.2, 0.5, 0.7])
    w = empty_normalized(complex, independent_simplicial_distribution(complex, probs))
    expected = independent_simplicial_weights(complex, probs / (1 - probs))
    assert w.weight(Cell.empty()) == pytest.approx(1.0)
    for n in complex.dims():
        assert np.allclose(w[n], expected[n], rtol=1e-12)


def test_empty_normalized_failures():
    complex = full_simplex(2)
    with pytest.raises(PositivityError):
        empty_normalized(complex, Distribution(complex, {Cell.empty(): 1.0}))
    with pytest.raises(NormalizationError):
        empty_normalized(complex, Distribution(complex, {Cell.simplex([0]): 1.0}))
    bare = full_simplex(2, augmented=False)
    with pytest.raises(NormalizationError):
        empty_normalized(bare, uniform_distribution(bare))


def test_independent_sequence_weights():
    complex = build_full_sequence_complex(2, max_dim=1)
    w = independent_sequence_weights(complex, [0.5, 0.5])
    assert w.weight(Cell.sequence([0, 1, 0])) == pytest.approx(0.125)
    assert w.weight(Cell.empty()) == 1.0
    with pytest.raises(ModelError):
        independent_sequence_weights(complex, [0.7, 0.7])
    with pytest.raises(InputError):
        independent_sequence_weights(complex, [1.0])


def test_independent_simplicial_weights():
    w = independent_simplicial_weights(full_simplex(3), [0.2, 0.3, 0.5])
    assert w.weight(Cell.simplex([0, 2])) == pytest.approx(0.1)
    with pytest.raises(PositivityError):
        IndependentModel((0.2, 0.0))


def test_weight_function_validation():
    complex = full_simplex(2)
    values = {n: np.ones(complex.count(n)) for n in complex.dims()}
    values[1] = np.array([0.0])
    with pytest.raises(PositivityError):
        WeightFunction(complex, values)
    with pytest.raises(InputError):
        WeightFunction(complex, {0: np.ones(2)})
    w = raw_weights(complex, {cell: 2.0 for n in complex.dims() for cell in complex.cells(n)})
    with pytest.raises(ValueError):
        w[0][0] = 5.0
    assert w.scaled(3.0).weight(Cell.simplex([0, 1])) == pytest.approx(6.0)


def test_raw_weights_must_cover_complex():
    complex = full_simplex(2)
    with pytest.raises(PositivityError):
        raw_weights(complex, {Cell.simplex([0]): 1.0})
    with pytest.raises(InputError):
        raw_weights(complex, {Cell.simplex([0, 2]): 1.0})


def test_factorization_of_product_weights():
    w = independent_simplicial_weights(full_simplex(3), [0.2, 0.3, 0.5])
    result = factorization_test(w)
    assert result.independent
    assert np.allclose(result.vector, [0.2, 0.3, 0.5], atol=1e-12)


def test_factorization_witness():
    complex = full_simplex(3)
    w = independent_simplicial_weights(complex, [0.2, 0.3, 0.5])
    values = {n: np.array(w[n]) for n in complex.dims()}
    values[1][complex.index_of(Cell.simplex([0, 1]))] += 0.01
    result = factorization_test(WeightFunction(complex, values))
    assert not result.independent
    assert result.witness == (0, 1)
    assert result.deviation > 0.1


def test_factorization_single_vertex_and_preconditions():
    assert factorization_test(independent_simplicial_weights(full_simplex(1), [3.0])).independent
    scaled = independent_simplicial_weights(full_simplex(2), [1.0, 2.0]).scaled(2.0)
    with pytest.raises(PreconditionError):
        factorization_test(scaled)


def test_independent_simplicial_distribution_sums_to_one():
    complex = full_simplex(4)
    p = independent_simplicial_distribution(complex, [0.1, 0.4, 0.5, 0.9])
    assert sum(p.support.values()) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InputError):
        independent_simplicial_distribution(complex, [0.1, 0.4, 0.5, 1.0])


def test_tokenize_and_vocabulary():
    sequences = tokenize_corpus(["b.a", "", "  c.b.b  "])
    assert sequences == [["b", "a"], ["c", "b", "b"]]
    assert build_vocabulary(sequences) == ["b", "a", "c"]


def test_fit_empirical_relative_frequencies():
    names, complex, p = fit_empirical(["a.b", "a.b", "b", "a.b.a.b"], max_dim=1)
    assert names == ["a", "b"]
    assert complex.top_dim == 2
    # The length-4 sequence exceeds the stored top dimension and is dropped
    assert p.probability(Cell.sequence([0, 1])) == pytest.approx(2 / 3)
    assert p.probability(Cell.sequence([1])) == pytest.approx(1 / 3)


def test_fit_empirical_smoothing_gives_full_support():
    names, complex, p = fit_empirical(["a.b", "b"], max_dim=0, smoothing=1.0)
    total_cells = sum(complex.counts().values())
    assert len(p.support) == total_cells
    w = conditional_weights(complex, p)
    assert w.dimension_sums()[1] == pytest.approx(1.0)


def test_simplicial_requires_matching_kind():
    with pytest.raises(InputError):
        independent_simplicial_weights(build_full_sequence_complex(2, max_dim=0), [0.5, 0.5])
    with pytest.raises(InputError):
        independent_sequence_weights(build_simplicial_complex(2, [(0, 1)]), [0.5, 0.5])
