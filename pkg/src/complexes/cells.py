"""Cells and the glue / remove / swap calculus on sequences."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from core.errors import InputError

COMPONENT = "cell-complex"


class CellKind(str, Enum):
    SEQUENCE = "sequence"
    SIMPLEX = "simplex"
    EMPTY = "empty"


@dataclass(frozen=True, slots=True)
class Cell:
    """A sequence, a simplex, or the empty cell of dimension -1.

    Vertices are dense integer ids. Sequences keep their order and may
    repeat a vertex; simplices are strictly increasing.
    """

    kind: CellKind
    vertices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind is CellKind.EMPTY:
            if self.vertices:
                raise InputError("the empty cell has no vertices", COMPONENT)
            return
        if not self.vertices:
            # Zero-length sequences and simplices collapse to the empty cell
            object.__setattr__(self, "kind", CellKind.EMPTY)
            return
        if self.kind is CellKind.SIMPLEX:
            for left, right in zip(self.vertices, self.vertices[1:]):
                if left >= right:
                    raise InputError(
                        f"simplex vertices must be strictly increasing, got {self.vertices}",
                        COMPONENT,
                    )

    @classmethod
    def empty(cls) -> "Cell":
        return cls(CellKind.EMPTY)

    @classmethod
    def sequence(cls, vertices: Iterable[int]) -> "Cell":
        return cls(CellKind.SEQUENCE, tuple(int(v) for v in vertices))

    @classmethod
    def simplex(cls, vertices: Iterable[int]) -> "Cell":
        """Build a simplex from any vertex collection; duplicates are rejected."""
        items = [int(v) for v in vertices]
        if len(set(items)) != len(items):
            raise InputError(f"duplicate vertex in simplex {items}", COMPONENT)
        return cls(CellKind.SIMPLEX, tuple(sorted(items)))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_empty(self) -> bool:
        return self.kind is CellKind.EMPTY

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, position: int) -> int:
        return self.vertices[position]


def _require_sequence(sigma: Cell, operation: str) -> None:
    if sigma.kind is CellKind.SIMPLEX:
        raise InputError(f"{operation} is defined on sequence cells only", COMPONENT)


def _check_slot(position: int, upper: int, operation: str) -> None:
    if not 0 <= position <= upper:
        raise InputError(
            f"{operation}: position {position} outside [0, {upper}]", COMPONENT
        )


def glue(sigma: Cell, position: int, vertex: int) -> Cell:
    """Insert ``vertex`` at slot ``position``; the result is one longer."""
    _require_sequence(sigma, "glue")
    _check_slot(position, len(sigma), "glue")
    v = sigma.vertices
    return Cell.sequence(v[:position] + (int(vertex),) + v[position:])


def remove(sigma: Cell, position: int) -> Cell:
    """Delete the vertex at slot ``position``; the result is one shorter."""
    _require_sequence(sigma, "remove")
    _check_slot(position, sigma.dim, "remove")
    v = sigma.vertices
    return Cell.sequence(v[:position] + v[position + 1:])


def swap(sigma: Cell, position: int, vertex: int) -> Cell:
    """Replace the vertex at slot ``position`` by ``vertex``."""
    _require_sequence(sigma, "swap")
    _check_slot(position, sigma.dim, "swap")
    v = sigma.vertices
    return Cell.sequence(v[:position] + (int(vertex),) + v[position + 1:])


def swapped(sigma: Cell, tau: Cell) -> bool:
    """True iff the sequences have equal length and differ in at most one slot."""
    _require_sequence(sigma, "swapped")
    _require_sequence(tau, "swapped")
    if len(sigma) != len(tau):
        return False
    return sum(1 for x, y in zip(sigma, tau) if x != y) <= 1


def swap_neighbours(sigma: Cell, vertex_count: int) -> list[Cell]:
    """All tau with tau ⋈ sigma over vertices 0..m-1, sigma itself first."""
    _require_sequence(sigma, "swap_neighbours")
    result = [sigma]
    for position, current in enumerate(sigma):
        for vertex in range(vertex_count):
            if vertex != current:
                result.append(swap(sigma, position, vertex))
    return result


def removal_positions(upper: Cell, lower: Cell) -> list[int]:
    """Positions j with upper with slot j removed equal to lower."""
    if len(upper) != len(lower) + 1:
        return []
    u, target = upper.vertices, lower.vertices
    return [j for j in range(len(u)) if u[:j] + u[j + 1:] == target]


def is_face(lower: Cell, upper: Cell) -> bool:
    """Face order: subsequence for sequences, subset for simplices.

    The empty cell is a face of everything.
    """
    if lower.is_empty:
        return True
    if upper.is_empty:
        return False
    if upper.kind is CellKind.SIMPLEX or lower.kind is CellKind.SIMPLEX:
        return set(lower.vertices) <= set(upper.vertices)
    # Subsequence test by a single left-to-right scan
    it = iter(upper.vertices)
    return all(any(x == y for y in it) for x in lower.vertices)


def cell_name(cell: Cell, names: Sequence[str]) -> str:
    """External name: ``a.b.a`` for sequences, ``{a,b}`` for simplices, ``()`` for empty."""
    if cell.is_empty:
        return "()"
    labels = [names[v] for v in cell.vertices]
    if cell.kind is CellKind.SIMPLEX:
        return "{" + ",".join(labels) + "}"
    return ".".join(labels)
