"""Cell complexes: cells, indexed complexes and incidence matrices."""

from complexes.cells import Cell, CellKind, glue, remove, swap, swapped
from complexes.incidence import incidence_matrix
from complexes.index import (
    ComplexIndex,
    SequenceComplex,
    SimplicialComplex,
    build_full_sequence_complex,
    build_simplicial_complex,
    full_simplex,
)
from complexes.validation import validate_acc

__all__ = [
    "Cell",
    "CellKind",
    "glue",
    "remove",
    "swap",
    "swapped",
    "incidence_matrix",
    "ComplexIndex",
    "SequenceComplex",
    "SimplicialComplex",
    "build_full_sequence_complex",
    "build_simplicial_complex",
    "full_simplex",
    "validate_acc",
]
