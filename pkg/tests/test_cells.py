import itertools

import pytest

from complexes.cells import (
    Cell,
    CellKind,
    cell_name,
    glue,
    is_face,
    remove,
    removal_positions,
    swap,
    swap_neighbours,
    swapped,
)
from core.errors import InputError

A, B, C = 0, 1, 2


def seq(*vertices):
    return Cell.sequence(vertices)


def test_zero_length_cells_collapse_to_empty():
    assert seq().kind is CellKind.EMPTY
    assert Cell.simplex([]).is_empty
    assert Cell.empty().dim == -1


def test_simplex_is_sorted_and_rejects_duplicates():
    assert Cell.simplex([2, 0, 1]).vertices == (0, 1, 2)
    with pytest.raises(InputError):
        Cell.simplex([1, 1])
    with pytest.raises(InputError):
        Cell(CellKind.SIMPLEX, (2, 1))


def test_glue_inserts_at_position():
    assert glue(seq(A, C), 1, B) == seq(A, B, C)
    assert glue(Cell.empty(), 0, B) == seq(B)
    assert glue(seq(A), 1, A) == seq(A, A)


def test_remove_and_swap():
    assert remove(seq(A, B, C), 0) == seq(B, C)
    assert remove(seq(A), 0).is_empty
    assert swap(seq(A, B, C), 2, A) == seq(A, B, A)


@pytest.mark.parametrize("operation,args", [
    (glue, (seq(A, B), 3, A)),
    (remove, (seq(A, B), 2)),
    (swap, (seq(A, B), -1, A)),
])
def test_positions_out_of_range(operation, args):
    with pytest.raises(InputError):
        operation(*args)


def test_sequence_operations_refuse_simplices():
    with pytest.raises(InputError):
        glue(Cell.simplex([0, 1]), 0, 2)


def test_swap_is_glue_after_remove():
    for sigma in map(Cell.sequence, itertools.product(range(3), repeat=3)):
        for i in range(3):
            for a in range(3):
                assert swap(sigma, i, a) == glue(remove(sigma, i), i, a)


def test_remove_after_glue_shifts_index():
    for sigma in map(Cell.sequence, itertools.product(range(2), repeat=3)):
        for i in range(4):
            for j in range(i):
                for a in range(2):
                    assert remove(glue(sigma, i, a), j) == glue(remove(sigma, j), i - 1, a)


def test_swapped_relation():
    assert swapped(seq(A, B), seq(A, B))
    assert swapped(seq(A, B), seq(C, B))
    assert not swapped(seq(A, B), seq(B, A))
    assert not swapped(seq(A), seq(A, A))


def test_swap_neighbours_count():
    sigma = seq(A, B, A)
    neighbours = swap_neighbours(sigma, 3)
    assert neighbours[0] == sigma
    assert len(neighbours) == 1 + 3 * (3 - 1)
    assert len(set(neighbours)) == len(neighbours)
    assert all(swapped(sigma, tau) for tau in neighbours)


def test_removal_positions_count_repeats():
    assert removal_positions(seq(A, A), seq(A)) == [0, 1]
    assert removal_positions(seq(A, B), seq(B)) == [0]
    assert removal_positions(seq(A, B), seq(C)) == []


def test_face_order():
    assert is_face(seq(A, C), seq(A, B, C))
    assert not is_face(seq(C, A), seq(A, B, C))
    assert is_face(Cell.empty(), seq(B))
    assert is_face(Cell.simplex([0, 2]), Cell.simplex([0, 1, 2]))
    assert not is_face(Cell.simplex([0, 3]), Cell.simplex([0, 1, 2]))


def test_cell_names():
    names = ["a", "b", "c"]
    assert cell_name(seq(A, B, A), names) == "a.b.a"
    assert cell_name(Cell.simplex([2, 0]), names) == "{a,c}"
    assert cell_name(Cell.empty(), names) == "()"
