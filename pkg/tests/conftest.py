from pathlib import Path

import numpy as np
import pytest

from complexes.cells import Cell
from complexes.index import build_simplicial_complex
from weights.functions import Flavor, IndependentModel, WeightFunction, raw_weights

FILES_DIR = Path(__file__).resolve().parent.parent / "files"


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def files_dir() -> Path:
    return FILES_DIR


@pytest.fixture
def make_sequence_model(rng):
    """Random independent sequence model: positive weights summing to one."""

    def factory(m: int) -> IndependentModel:
        vector = rng.dirichlet(np.full(m, 2.0))
        return IndependentModel(tuple(vector.tolist()), Flavor.SEQUENCE)

    return factory


@pytest.fixture
def make_random_weights(rng):
    """Random positive weights on every stored cell of a complex."""

    def factory(complex, low: float = 0.5, high: float = 2.0) -> WeightFunction:
        values = {n: rng.uniform(low, high, complex.count(n)) for n in complex.dims()}
        return WeightFunction(complex, values)

    return factory


@pytest.fixture
def triangle_boundary():
    """Boundary of a triangle with unit weights on every cell."""
    complex = build_simplicial_complex(3, [(0, 1), (1, 2), (0, 2)])
    weights = {cell: 1.0 for n in complex.dims() for cell in complex.cells(n)}
    return complex, raw_weights(complex, weights)


@pytest.fixture
def cycle_cochain():
    """Oriented cycle 0 -> 1 -> 2 -> 0 on the edges {0,1}, {0,2}, {1,2} (lexicographic order)."""
    return {Cell.simplex((0, 1)): 1.0, Cell.simplex((0, 2)): -1.0, Cell.simplex((1, 2)): 1.0}
