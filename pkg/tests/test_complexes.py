import numpy as np
import pytest
import scipy.sparse as sp

from complexes.cells import Cell
from complexes.factory import get_complex
from complexes.incidence import incidence_matrix
from complexes.index import (
    build_full_sequence_complex,
    build_simplicial_complex,
    full_simplex,
)
from complexes.validation import validate_acc
from core.errors import InputError, SizeError, TruncationError
from core.job_config import ComplexSpec


def test_sequence_counts():
    complex = build_full_sequence_complex(2, max_dim=1)
    assert complex.counts() == {-1: 1, 0: 2, 1: 4, 2: 8}
    assert build_full_sequence_complex(4, max_dim=3).count(4) == 1024


def test_sequence_enumeration_order():
    complex = build_full_sequence_complex(3, max_dim=0)
    assert complex.cells(0) == [Cell.sequence([v]) for v in range(3)]
    # Leftmost slot most significant
    assert complex.cell_at(1, 5) == Cell.sequence([1, 2])
    assert complex.index_of(Cell.sequence([2, 0])) == 6


def test_index_round_trip():
    complex = build_full_sequence_complex(3, max_dim=1)
    for n in complex.dims():
        for i, cell in enumerate(complex.cells(n)):
            assert complex.index_of(cell) == i


def test_truncation_and_augmentation():
    complex = build_full_sequence_complex(2, max_dim=1, augmented=False)
    assert list(complex.dims()) == [0, 1, 2]
    assert not complex.contains(Cell.empty())
    with pytest.raises(TruncationError):
        complex.count(3)
    with pytest.raises(TruncationError):
        complex.require_dim(2, "laplacian")


def test_cell_budget():
    with pytest.raises(SizeError) as info:
        build_full_sequence_complex(10, max_dim=4, cell_budget=1000)
    assert info.value.count == 10 ** 6
    assert info.value.exit_code == 2


def test_simplicial_closure():
    assert full_simplex(3).counts() == {-1: 1, 0: 3, 1: 3, 2: 1}
    boundary = build_simplicial_complex(3, [(0, 1), (1, 2), (0, 2)])
    assert boundary.count(1) == 3
    assert boundary.count(2) == 0
    assert boundary.top_dim == 1
    once = build_simplicial_complex(2, [(0, 1)])
    twice = build_simplicial_complex(2, [(0, 1), (1, 0)])
    assert once.counts() == twice.counts()


def test_simplicial_keeps_isolated_vertices_and_skeleton():
    complex = build_simplicial_complex(4, [(0, 1, 2)], max_dim=1)
    assert complex.count(0) == 4
    assert complex.count(1) == 3
    assert complex.top_dim == 1


@pytest.mark.parametrize("facets", [[(0, 3)], [(0, 0, 1)], [(-1, 0)]])
def test_bad_facets(facets):
    with pytest.raises(InputError):
        build_simplicial_complex(3, facets)


def test_euler_characteristic():
    # Reduced Euler characteristic of a contractible simplex is zero
    assert full_simplex(4).euler_characteristic() == 0
    assert full_simplex(4, augmented=False).euler_characteristic() == 1
    boundary = build_simplicial_complex(3, [(0, 1), (1, 2), (0, 2)], augmented=False)
    assert boundary.euler_characteristic() == 0


def test_incidence_values():
    seq = build_full_sequence_complex(2, max_dim=1)
    assert seq.incidence(Cell.sequence([0, 1]), Cell.sequence([1])) == 1
    assert seq.incidence(Cell.sequence([0, 1]), Cell.sequence([0])) == -1
    assert seq.incidence(Cell.sequence([0, 0]), Cell.sequence([0])) == 0
    simplex = full_simplex(4)
    assert simplex.incidence(Cell.simplex([1, 2, 3]), Cell.simplex([1, 3])) == -1


def test_incidence_matrices():
    seq = build_full_sequence_complex(2, max_dim=1)
    assert incidence_matrix(seq, -1).toarray().tolist() == [[1], [1]]
    d0 = incidence_matrix(full_simplex(3), 0).toarray()
    assert d0.shape == (3, 3)
    assert np.all(d0.sum(axis=1) == 0)
    assert incidence_matrix(full_simplex(3), 2).shape == (0, 1)


@pytest.mark.parametrize("complex", [
    build_full_sequence_complex(2, max_dim=2),
    build_full_sequence_complex(3, max_dim=1),
    full_simplex(4),
    build_simplicial_complex(5, [(0, 1, 2), (2, 3), (3, 4, 1)]),
])
def test_coboundary_squares_to_zero(complex):
    report = validate_acc(complex)
    assert report.passed
    assert report.checked_pairs > 0
    for n in list(complex.dims())[:-2]:
        composed = incidence_matrix(complex, n + 1) @ incidence_matrix(complex, n)
        assert composed.count_nonzero() == 0


def test_flipped_sign_is_reported():
    complex = full_simplex(3)

    def tampered(c, n):
        matrix = incidence_matrix(c, n).tolil()
        if n == 1:
            matrix[0, 0] = -matrix[0, 0]
        return sp.csr_matrix(matrix)

    report = validate_acc(complex, tampered)
    assert not report.passed
    assert report.violation.check == "composition"
    assert report.violation.upper == (0, 1, 2)


def test_factory_dispatches_on_kind():
    seq = get_complex(ComplexSpec(kind="sequence", vertices=["a", "b"], max_dim=1))
    assert seq.complex_kind == "full-sequence"
    assert seq.count(2) == 8
    simplex = get_complex(ComplexSpec(kind="simplicial", vertices=3))
    assert simplex.counts() == {-1: 1, 0: 3, 1: 3, 2: 1}
    named = get_complex(ComplexSpec(kind="simplicial", vertices=["x", "y", "z"],
                                    facets=[["x", "z"]]), augmented=False)
    assert named.cells(1) == [Cell.simplex([0, 2])]
    assert named.min_dim == 0
