"""Graded cell enumeration with dense indices and the incidence function."""

from abc import ABC, abstractmethod
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from complexes.cells import COMPONENT, Cell, CellKind, removal_positions
from core.errors import InputError, SizeError, TruncationError
from core.logger import get_logger
from core.settings import settings

logger = get_logger("complexes")

FULL_SEQUENCE = "full-sequence"
SIMPLICIAL = "simplicial"


class ComplexIndex(ABC):
    """Immutable graded enumeration of the cells of a complex.

    Cells of dimension n are indexed 0..count(n)-1 with no gaps. Dimension
    -1 holds the empty cell unless the complex is built without
    augmentation.
    """

    complex_kind: str
    cell_kind: CellKind

    def __init__(self, vertex_count: int, max_dim: int, top_dim: int, augmented: bool):
        if vertex_count < 1:
            raise InputError(f"vertex_count must be positive, got {vertex_count}", COMPONENT)
        self._vertex_count = int(vertex_count)
        self._max_dim = int(max_dim)
        self._top_dim = int(top_dim)
        self._augmented = bool(augmented)

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def max_dim(self) -> int:
        """Largest dimension at which Laplacians may be assembled."""
        return self._max_dim

    @property
    def top_dim(self) -> int:
        """Largest stored dimension."""
        return self._top_dim

    @property
    def augmented(self) -> bool:
        return self._augmented

    @property
    def min_dim(self) -> int:
        return -1 if self._augmented else 0

    def dims(self) -> range:
        return range(self.min_dim, self._top_dim + 1)

    def counts(self) -> dict[int, int]:
        return {n: self.count(n) for n in self.dims()}

    def euler_characteristic(self) -> int:
        return sum(c if n % 2 == 0 else -c for n, c in self.counts().items())

    @abstractmethod
    def count(self, n: int) -> int:
        """Number of cells of dimension n (0 below the stored range)."""

    @abstractmethod
    def vertex_rows(self, n: int) -> np.ndarray:
        """Integer array of shape (count(n), n+1), row i = vertices of cell i."""

    @abstractmethod
    def _index_rows(self, n: int, rows: np.ndarray) -> np.ndarray:
        """Indices of the dimension-n cells given by ``rows`` (-1 when absent)."""

    @abstractmethod
    def _make_cell(self, vertices: Sequence[int]) -> Cell:
        ...

    def cells(self, n: int) -> list[Cell]:
        return [self._make_cell(row) for row in self.vertex_rows(n).tolist()]

    def cell_at(self, n: int, index: int) -> Cell:
        if not 0 <= index < self.count(n):
            raise InputError(f"no cell {index} in dimension {n}", COMPONENT)
        return self._make_cell(self.vertex_rows(n)[index].tolist())

    def contains(self, cell: Cell) -> bool:
        return self._lookup(cell) >= 0

    def index_of(self, cell: Cell) -> int:
        index = self._lookup(cell)
        if index < 0:
            raise InputError(f"cell {cell.vertices} is not in the complex", COMPONENT)
        return index

    def _lookup(self, cell: Cell) -> int:
        n = cell.dim
        if cell.kind not in (self.cell_kind, CellKind.EMPTY):
            return -1
        if not self.min_dim <= n <= self._top_dim or self.count(n) == 0:
            return -1
        rows = np.asarray([cell.vertices], dtype=np.int64).reshape(1, n + 1)
        return int(self._index_rows(n, rows)[0])

    def face_indices(self, n: int, position: int) -> np.ndarray:
        """For every cell of dimension n, the index of its face with slot ``position`` removed."""
        rows = self.vertex_rows(n)
        return self._index_rows(n - 1, np.delete(rows, position, axis=1))

    def require_dim(self, n: int, operation: str) -> None:
        """Refuse operators that would need cells above the stored top dimension."""
        if n > self._max_dim:
            raise TruncationError(
                f"{operation} at dimension {n} needs cells of dimension {n + 1}, "
                f"but the complex is truncated at max_dim={self._max_dim}",
                COMPONENT,
            )

    def incidence(self, upper: Cell, lower: Cell) -> int:
        """Signed incidence kappa(upper, lower).

        Zero unless ``lower`` is a codimension-one face; otherwise the sum of
        (-1)^j over the removal positions j that turn ``upper`` into ``lower``.
        """
        if not self.contains(upper) or not self.contains(lower):
            raise InputError("incidence is defined on cells of the complex only", COMPONENT)
        return sum((-1) ** j for j in removal_positions(upper, lower))

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(m={self._vertex_count}, max_dim={self._max_dim}, "
            f"counts={self.counts()})"
        )


class SequenceComplex(ComplexIndex):
    """The full sequence complex over m vertices, truncated above max_dim+1.

    Cells of dimension n are all m^(n+1) sequences of length n+1, indexed
    as base-m numerals with the leftmost slot most significant.
    """

    complex_kind = FULL_SEQUENCE
    cell_kind = CellKind.SEQUENCE

    def __init__(self, vertex_count: int, max_dim: int, augmented: bool = True,
                 cell_budget: Optional[int] = None):
        if max_dim < -1:
            raise InputError(f"max_dim must be >= -1, got {max_dim}", COMPONENT)
        super().__init__(vertex_count, max_dim, max_dim + 1, augmented)
        budget = cell_budget or settings.CELL_BUDGET
        top_count = vertex_count ** (max_dim + 2)
        if top_count > budget:
            raise SizeError(
                f"dimension {max_dim + 1} would hold {top_count} cells, "
                f"over the budget of {budget}",
                top_count,
                COMPONENT,
            )
        logger.debug(f"Full sequence complex m={vertex_count}, dims {self.min_dim}..{self.top_dim}")

    def count(self, n: int) -> int:
        if n > self._top_dim:
            raise TruncationError(
                f"dimension {n} is above the stored top dimension {self._top_dim}", COMPONENT
            )
        if n < self.min_dim:
            return 0
        return self._vertex_count ** (n + 1)

    def radix(self, n: int) -> np.ndarray:
        """Place values of the n+1 slots of a dimension-n sequence."""
        return self._vertex_count ** np.arange(n, -1, -1, dtype=np.int64)

    def vertex_rows(self, n: int) -> np.ndarray:
        if self.count(n) == 0:
            return np.zeros((0, n + 1), dtype=np.int64)
        if n == -1:
            return np.zeros((1, 0), dtype=np.int64)
        shape = (self._vertex_count,) * (n + 1)
        return np.indices(shape, dtype=np.int64).reshape(n + 1, -1).T

    def _index_rows(self, n: int, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64)
        if n < self.min_dim:
            return np.full(len(rows), -1, dtype=np.int64)
        valid = np.all((rows >= 0) & (rows < self._vertex_count), axis=1)
        index = rows @ self.radix(n) if n >= 0 else np.zeros(len(rows), dtype=np.int64)
        return np.where(valid, index, -1)

    def _make_cell(self, vertices: Sequence[int]) -> Cell:
        return Cell.sequence(vertices)


class SimplicialComplex(ComplexIndex):
    """Downward closure of a list of facets over vertices 0..m-1.

    Every vertex is stored as a 0-cell. Cells are sorted lexicographically
    within each dimension.
    """

    complex_kind = SIMPLICIAL
    cell_kind = CellKind.SIMPLEX

    def __init__(self, vertex_count: int, facets: Iterable[Iterable[int]],
                 max_dim: Optional[int] = None, augmented: bool = True,
                 cell_budget: Optional[int] = None):
        budget = cell_budget or settings.CELL_BUDGET
        normalized = self._normalize_facets(vertex_count, facets, budget)
        faces: dict[int, set[tuple[int, ...]]] = {0: {(v,) for v in range(vertex_count)}}
        for facet in normalized:
            top = len(facet) if max_dim is None else min(len(facet), max_dim + 1)
            for size in range(1, top + 1):
                faces.setdefault(size - 1, set()).update(combinations(facet, size))

        stored_top = max((n for n, cells in faces.items() if cells), default=0)
        if max_dim is not None:
            stored_top = min(stored_top, max_dim)
        super().__init__(vertex_count, stored_top, stored_top, augmented)

        self._cells: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._lookup_table: dict[int, dict[tuple[int, ...], int]] = {}
        if augmented:
            self._cells[-1] = ((),)
        for n in range(0, stored_top + 1):
            ordered = tuple(sorted(faces.get(n, ())))
            if len(ordered) > budget:
                raise SizeError(
                    f"dimension {n} holds {len(ordered)} cells, over the budget of {budget}",
                    len(ordered),
                    COMPONENT,
                )
            self._cells[n] = ordered
        for n, ordered in self._cells.items():
            self._lookup_table[n] = {cell: i for i, cell in enumerate(ordered)}
        logger.debug(f"Simplicial complex m={vertex_count}, counts {self.counts()}")

    @staticmethod
    def _normalize_facets(vertex_count: int, facets: Iterable[Iterable[int]],
                          budget: int) -> list[tuple[int, ...]]:
        result = set()
        for facet in facets:
            items = [int(v) for v in facet]
            for v in items:
                if not 0 <= v < vertex_count:
                    raise InputError(
                        f"facet vertex {v} outside [0, {vertex_count})", COMPONENT
                    )
            if len(set(items)) != len(items):
                raise InputError(f"duplicate vertex in facet {items}", COMPONENT)
            widest = comb(len(items), len(items) // 2)
            if widest > budget:
                raise SizeError(
                    f"facet of size {len(items)} closes to {widest} cells in one dimension",
                    widest,
                    COMPONENT,
                )
            result.add(tuple(sorted(items)))
        return sorted(result)

    def count(self, n: int) -> int:
        return len(self._cells.get(n, ()))

    def vertex_rows(self, n: int) -> np.ndarray:
        cells = self._cells.get(n, ())
        return np.asarray(cells, dtype=np.int64).reshape(len(cells), n + 1)

    def _index_rows(self, n: int, rows: np.ndarray) -> np.ndarray:
        table = self._lookup_table.get(n, {})
        return np.fromiter(
            (table.get(tuple(row), -1) for row in np.asarray(rows).tolist()),
            dtype=np.int64,
            count=len(rows),
        )

    def _make_cell(self, vertices: Sequence[int]) -> Cell:
        return Cell.simplex(vertices)


def build_full_sequence_complex(vertex_count: int, max_dim: int, augmented: bool = True,
                                cell_budget: Optional[int] = None) -> SequenceComplex:
    """All sequences of length <= max_dim+2 over ``vertex_count`` vertices."""
    return SequenceComplex(vertex_count, max_dim, augmented=augmented, cell_budget=cell_budget)


def build_simplicial_complex(vertex_count: int, facets: Iterable[Iterable[int]],
                             max_dim: Optional[int] = None, augmented: bool = True,
                             cell_budget: Optional[int] = None) -> SimplicialComplex:
    """Downward closure of ``facets``, optionally cut to its ``max_dim`` skeleton."""
    return SimplicialComplex(vertex_count, facets, max_dim=max_dim, augmented=augmented,
                             cell_budget=cell_budget)


def full_simplex(vertex_count: int, augmented: bool = True,
                 cell_budget: Optional[int] = None) -> SimplicialComplex:
    """The complex 2^[m] of all subsets of the vertex set."""
    return build_simplicial_complex(vertex_count, [range(vertex_count)], augmented=augmented,
                                    cell_budget=cell_budget)
