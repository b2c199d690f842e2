"""Probability distributions supported on the cells of a complex."""

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from complexes.cells import Cell
from complexes.index import ComplexIndex
from core.errors import InputError
from core.settings import settings

COMPONENT = "weights"


@dataclass(frozen=True)
class Distribution:
    """Nonnegative probabilities on cells of ``complex`` summing to one.

    Cells absent from ``support`` carry probability zero.
    """

    complex: ComplexIndex
    support: Mapping[Cell, float]
    tol: float = field(default_factory=lambda: settings.tol.DISTRIBUTION)

    def __post_init__(self):
        clean: dict[Cell, float] = {}
        for cell, prob in self.support.items():
            prob = float(prob)
            if not np.isfinite(prob) or prob < 0:
                raise InputError(f"probability of {cell.vertices} is {prob}", COMPONENT)
            if not self.complex.contains(cell):
                raise InputError(f"support cell {cell.vertices} is not in the complex", COMPONENT)
            clean[cell] = clean.get(cell, 0.0) + prob
        total = float(np.sum(list(clean.values()))) if clean else 0.0
        if abs(total - 1.0) > self.tol:
            raise InputError(f"probabilities sum to {total!r}, not 1", COMPONENT)
        object.__setattr__(self, "support", clean)

    def probability(self, cell: Cell) -> float:
        return self.support.get(cell, 0.0)

    def dimension_array(self, n: int) -> np.ndarray:
        """Probabilities of the dimension-n cells, aligned with the complex index."""
        values = np.zeros(self.complex.count(n), dtype=float)
        for cell, prob in self.support.items():
            if cell.dim == n:
                values[self.complex.index_of(cell)] = prob
        return values

    def slice_mass(self, n: int) -> float:
        return float(sum(p for cell, p in self.support.items() if cell.dim == n))


def independent_simplicial_distribution(complex: ComplexIndex, vertex_probs,
                                        tol: Optional[float] = None) -> Distribution:
    """Product Bernoulli distribution p(xi) = prod_{i in xi} p_i prod_{j not in xi} (1 - p_j).

    ``complex`` must be the full simplex 2^[m] so that the probabilities sum to one.
    """
    probs = np.asarray(vertex_probs, dtype=float)
    if probs.shape != (complex.vertex_count,):
        raise InputError(
            f"expected {complex.vertex_count} vertex probabilities, got {probs.shape}", COMPONENT
        )
    if np.any(probs <= 0) or np.any(probs >= 1):
        raise InputError("independent vertex probabilities must lie in (0, 1)", COMPONENT)

    absent = np.prod(1.0 - probs)
    ratio = probs / (1.0 - probs)
    support: dict[Cell, float] = {}
    for n in complex.dims():
        rows = complex.vertex_rows(n)
        values = absent * np.prod(ratio[rows], axis=1)
        for cell, value in zip(complex.cells(n), values.tolist()):
            support[cell] = value
    return Distribution(complex, support, tol=tol if tol is not None else settings.tol.DISTRIBUTION)
