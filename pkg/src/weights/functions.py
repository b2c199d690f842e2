"""Weight functions on cells and the constructors that derive them."""

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

import numpy as np

from complexes.cells import Cell
from complexes.index import FULL_SEQUENCE, SIMPLICIAL, ComplexIndex
from core.errors import (
    DegenerateSliceError,
    InputError,
    ModelError,
    NormalizationError,
    PositivityError,
)
from core.logger import get_logger
from core.settings import settings
from weights.distribution import COMPONENT, Distribution

logger = get_logger("weights")


class Provenance(str, Enum):
    CONDITIONAL = "conditional"
    MOMENT = "moment"
    EMPTY_NORMALIZED = "empty-normalized"
    INDEPENDENT_SEQUENCE = "independent-sequence"
    INDEPENDENT_SIMPLICIAL = "independent-simplicial"
    RAW = "raw"


class Flavor(str, Enum):
    SEQUENCE = "sequence"
    SIMPLICIAL = "simplicial"


@dataclass(frozen=True)
class WeightFunction:
    """Strictly positive weight per cell, stored as one array per dimension.

    ``values[n][i]`` is the weight of cell i of dimension n in ``complex``.
    """

    complex: ComplexIndex
    values: Mapping[int, np.ndarray]
    provenance: Provenance = Provenance.RAW

    def __post_init__(self):
        frozen: dict[int, np.ndarray] = {}
        for n in self.complex.dims():
            if n not in self.values:
                raise InputError(f"no weights given for dimension {n}", COMPONENT)
            array = np.array(self.values[n], dtype=float)
            if array.shape != (self.complex.count(n),):
                raise InputError(
                    f"dimension {n}: expected {self.complex.count(n)} weights, got {array.shape}",
                    COMPONENT,
                )
            bad = np.flatnonzero(~(array > 0) | ~np.isfinite(array))
            if bad.size:
                cell = self.complex.cell_at(n, int(bad[0]))
                raise PositivityError(
                    f"weight of cell {cell.vertices} (dim {n}) is {array[bad[0]]!r}; "
                    "weights must be strictly positive",
                    COMPONENT,
                )
            array.setflags(write=False)
            frozen[n] = array
        object.__setattr__(self, "values", frozen)

    def __getitem__(self, n: int) -> np.ndarray:
        return self.values[n]

    def weight(self, cell: Cell) -> float:
        return float(self.values[cell.dim][self.complex.index_of(cell)])

    def vertex_vector(self) -> np.ndarray:
        """Weights of the 0-cells, in vertex id order."""
        return np.array(self.values[0])

    def scaled(self, alpha: float) -> "WeightFunction":
        """Same weights times one global positive constant."""
        if not alpha > 0:
            raise PositivityError(f"scaling factor must be positive, got {alpha}", COMPONENT)
        return WeightFunction(
            self.complex,
            {n: alpha * array for n, array in self.values.items()},
            Provenance.RAW,
        )

    def dimension_sums(self) -> dict[int, float]:
        return {n: float(np.sum(array)) for n, array in self.values.items()}


@dataclass(frozen=True)
class IndependentModel:
    """Per-vertex weights of an independent vertices model."""

    vertex_weights: tuple[float, ...]
    flavor: Flavor = Flavor.SEQUENCE

    def __post_init__(self):
        weights = tuple(float(w) for w in self.vertex_weights)
        object.__setattr__(self, "vertex_weights", weights)
        if not weights:
            raise ModelError("an independent model needs at least one vertex", COMPONENT)
        if any(not w > 0 for w in weights):
            raise PositivityError(f"vertex weights must be positive, got {weights}", COMPONENT)

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.vertex_weights, dtype=float)

    def check_sequence_model(self, tol: Optional[float] = None) -> None:
        """Raise ModelError unless the weights form a sequence independent model."""
        tol = settings.tol.DISTRIBUTION if tol is None else tol
        total = float(np.sum(self.vector))
        if self.flavor is not Flavor.SEQUENCE:
            raise ModelError("model is not of the sequence flavor", COMPONENT)
        if abs(total - 1.0) > tol:
            raise ModelError(f"sequence vertex weights must sum to 1, got {total!r}", COMPONENT)
        if np.any(self.vector > 1):
            raise ModelError("sequence vertex weights must not exceed 1", COMPONENT)


def _require_kind(complex: ComplexIndex, kind: str, operation: str) -> None:
    if complex.complex_kind != kind:
        raise InputError(f"{operation} needs a {kind} complex, got {complex.complex_kind}",
                         COMPONENT)


def _product_weights(complex: ComplexIndex, vector: np.ndarray) -> dict[int, np.ndarray]:
    if vector.shape != (complex.vertex_count,):
        raise InputError(
            f"expected {complex.vertex_count} vertex weights, got {vector.shape}", COMPONENT
        )
    # Empty products give w(empty) = 1
    return {n: np.prod(vector[complex.vertex_rows(n)], axis=1) for n in complex.dims()}


def conditional_weights(complex: ComplexIndex, p: Distribution) -> WeightFunction:
    """w(sigma) = p(sigma) / sum of p over cells of the same length.

    The empty cell is alone in its slice and always gets weight 1.
    """
    values = {}
    for n in complex.dims():
        probs = p.dimension_array(n)
        if n == -1:
            values[n] = np.ones(1)
            continue
        mass = float(np.sum(probs))
        if not mass > 0:
            raise DegenerateSliceError(f"no probability mass on sequences of length {n + 1}",
                                       COMPONENT)
        zero = np.flatnonzero(probs <= 0)
        if zero.size:
            cell = complex.cell_at(n, int(zero[0]))
            raise PositivityError(
                f"cell {cell.vertices} has probability zero; restrict the complex or smooth "
                "the distribution",
                COMPONENT,
            )
        values[n] = probs / mass
    logger.debug(f"Conditional weights on dims {list(values)}")
    return WeightFunction(complex, values, Provenance.CONDITIONAL)


def moment_map(complex: ComplexIndex, p: Distribution) -> WeightFunction:
    """m_p(xi) = sum of p(zeta) over zeta containing xi.

    ``p`` lives on the full simplex over the same vertices; the moments are
    evaluated on the cells of ``complex``.
    """
    _require_kind(complex, SIMPLICIAL, "moment_map")
    _require_kind(p.complex, SIMPLICIAL, "moment_map")
    m = complex.vertex_count
    if p.complex.vertex_count != m or p.complex.count(m - 1) != 1:
        raise InputError("moment_map needs a distribution on the full simplex 2^[m]", COMPONENT)

    def masks(rows: np.ndarray) -> np.ndarray:
        return np.sum(np.left_shift(np.int64(1), rows), axis=1, dtype=np.int64)

    support_cells = list(p.support)
    support_masks = np.array(
        [sum(1 << v for v in cell.vertices) for cell in support_cells], dtype=np.int64
    )
    support_probs = np.array([p.support[c] for c in support_cells], dtype=float)

    values = {}
    for n in complex.dims():
        face_masks = masks(complex.vertex_rows(n))
        contains = (support_masks[None, :] & face_masks[:, None]) == face_masks[:, None]
        values[n] = contains.astype(float) @ support_probs
    return WeightFunction(complex, values, Provenance.MOMENT)


def empty_normalized(complex: ComplexIndex, p: Distribution) -> WeightFunction:
    """p_empty(xi) = p(xi) / p(empty)."""
    if not complex.augmented:
        raise NormalizationError("normalizing by p(empty) needs the empty cell", COMPONENT)
    empty_prob = float(p.dimension_array(-1)[0])
    if not empty_prob > 0:
        raise NormalizationError("p(empty) is zero", COMPONENT)
    values = {n: p.dimension_array(n) / empty_prob for n in complex.dims()}
    return WeightFunction(complex, values, Provenance.EMPTY_NORMALIZED)


def independent_sequence_weights(complex: ComplexIndex, vertex_weights,
                                 tol: Optional[float] = None) -> WeightFunction:
    """w((v_0, ..., v_n)) = prod w_{v_i}; the vertex weights must sum to one."""
    _require_kind(complex, FULL_SEQUENCE, "independent_sequence_weights")
    model = vertex_weights if isinstance(vertex_weights, IndependentModel) else \
        IndependentModel(tuple(vertex_weights), Flavor.SEQUENCE)
    model.check_sequence_model(tol)
    return WeightFunction(complex, _product_weights(complex, model.vector),
                          Provenance.INDEPENDENT_SEQUENCE)


def independent_simplicial_weights(complex: ComplexIndex, vertex_weights) -> WeightFunction:
    """w(xi) = prod_{i in xi} w_i for any positive vector."""
    _require_kind(complex, SIMPLICIAL, "independent_simplicial_weights")
    model = vertex_weights if isinstance(vertex_weights, IndependentModel) else \
        IndependentModel(tuple(vertex_weights), Flavor.SIMPLICIAL)
    return WeightFunction(complex, _product_weights(complex, model.vector),
                          Provenance.INDEPENDENT_SIMPLICIAL)


def raw_weights(complex: ComplexIndex, weights: Mapping[Cell, float]) -> WeightFunction:
    """Weights given cell by cell; every stored cell must be listed."""
    values = {n: np.zeros(complex.count(n)) for n in complex.dims()}
    for cell, value in weights.items():
        index = complex.index_of(cell)
        values[cell.dim][index] = float(value)
    return WeightFunction(complex, values, Provenance.RAW)
