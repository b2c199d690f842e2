"""Laplacians evaluated entry by entry from closed-form expansions.

Each function returns a dense matrix M with M[tau, sigma] the coefficient
of e_tau in L_n(e_sigma), matching the matrix-product assembly.
"""

import numpy as np

from complexes.cells import Cell, glue, remove, swap
from complexes.index import FULL_SEQUENCE, SIMPLICIAL, ComplexIndex
from core.errors import InputError
from hodge.laplacian import COMPONENT
from weights.functions import IndependentModel, WeightFunction


def _require(complex: ComplexIndex, kind: str, operation: str) -> None:
    if complex.complex_kind != kind:
        raise InputError(f"{operation} needs a {kind} complex", COMPONENT)


def _require_augmented(complex: ComplexIndex, operation: str) -> None:
    if not complex.augmented:
        raise InputError(f"{operation} expands the augmented complex; rebuild it with the empty cell",
                         COMPONENT)


class _SequenceWeights:
    """Weight and index lookup for sequences of a full sequence complex."""

    def __init__(self, complex: ComplexIndex, w: WeightFunction):
        self.complex = complex
        self.w = w

    def index(self, cell: Cell) -> int:
        return self.complex.index_of(cell)

    def __call__(self, cell: Cell) -> float:
        return float(self.w[cell.dim][self.complex.index_of(cell)])


def sequence_laplacian_direct(complex: ComplexIndex, w: WeightFunction, n: int) -> np.ndarray:
    """General weighted sequence Laplacian from its glue / remove / swap expansion.

    Four groups of terms: the diagonal up-degree, the glue-after-remove terms
    with j < i, the swap terms, and the glue-after-remove terms with j > i.
    """
    _require(complex, FULL_SEQUENCE, "sequence_laplacian_direct")
    _require_augmented(complex, "sequence_laplacian_direct")
    complex.require_dim(n, "sequence_laplacian_direct")
    weight = _SequenceWeights(complex, w)
    vertices = range(complex.vertex_count)
    size = complex.count(n)
    matrix = np.zeros((size, size))

    for col, sigma in enumerate(complex.cells(n)):
        w_sigma = weight(sigma)
        matrix[col, col] += sum(
            weight(glue(sigma, i, a)) for i in range(n + 2) for a in vertices
        ) / w_sigma
        if n < 0:
            continue
        # Down-degree ratios w(sigma)/w(sigma minus slot j)
        ratio = [w_sigma / weight(remove(sigma, j)) for j in range(n + 1)]

        for i in range(n + 1):
            for a in vertices:
                swapped_cell = swap(sigma, i, a)
                w_swap = weight(swapped_cell)
                coeff = (weight(glue(sigma, i, a)) + weight(glue(sigma, i + 1, a))) / w_swap \
                    - ratio[i]
                matrix[weight.index(swapped_cell), col] -= coeff

                for j in range(i):
                    target = glue(remove(sigma, j), i, a)
                    coeff = ratio[j] - weight(glue(sigma, i + 1, a)) / weight(target)
                    matrix[weight.index(target), col] += (-1) ** (i + j) * coeff

                for j in range(i + 1, n + 1):
                    target = glue(remove(sigma, j), i, a)
                    coeff = ratio[j] - weight(glue(sigma, i, a)) / weight(target)
                    matrix[weight.index(target), col] += (-1) ** (i + j) * coeff
    return matrix


def independent_sequence_laplacian_direct(complex: ComplexIndex, model: IndependentModel,
                                          n: int) -> np.ndarray:
    """Independent-model sequence Laplacian.

    Diagonal (n+2) - sum_i w(sigma_i); entry -w(sigma_j) at every tau that
    differs from sigma exactly in slot j; zero elsewhere.
    """
    _require(complex, FULL_SEQUENCE, "independent_sequence_laplacian_direct")
    _require_augmented(complex, "independent_sequence_laplacian_direct")
    complex.require_dim(n, "independent_sequence_laplacian_direct")
    model.check_sequence_model()
    vector = model.vector
    if vector.shape != (complex.vertex_count,):
        raise InputError("model size does not match the vertex count", COMPONENT)

    size = complex.count(n)
    rows = complex.vertex_rows(n)
    columns = np.arange(size)
    matrix = np.zeros((size, size))
    matrix[columns, columns] = (n + 2) - np.sum(vector[rows], axis=1)
    if n < 0:
        return matrix

    radix = complex.radix(n)
    for j in range(n + 1):
        current = rows[:, j]
        for a in range(complex.vertex_count):
            moved = current != a
            targets = columns[moved] + (a - current[moved]) * radix[j]
            matrix[targets, columns[moved]] = -vector[current[moved]]
    return matrix


def simplicial_laplacian_direct(complex: ComplexIndex, w: WeightFunction, n: int) -> np.ndarray:
    """Weighted simplicial Laplacian from its up/down degree expansion.

    Diagonal: sum over cofaces of w(coface)/w(xi) plus sum over faces of
    w(xi)/w(face). Off-diagonal at ({i} u xi) minus i_k: the signed
    difference of the down ratio (when that cell is stored) and the up
    ratio (when {i} u xi is stored).
    """
    _require(complex, SIMPLICIAL, "simplicial_laplacian_direct")
    complex.require_dim(n, "simplicial_laplacian_direct")

    def lookup(vertices) -> int:
        cell = Cell.simplex(vertices)
        if not complex.contains(cell):
            return -1
        return complex.index_of(cell)

    def weight(dim: int, index: int) -> float:
        return float(w[dim][index])

    size = complex.count(n)
    matrix = np.zeros((size, size))
    for col, xi in enumerate(complex.cells(n)):
        members = xi.vertices
        w_xi = weight(n, col)
        faces = [lookup(members[:k] + members[k + 1:]) for k in range(n + 1)]
        down_ratio = [w_xi / weight(n - 1, f) if f >= 0 else 0.0 for f in faces]
        matrix[col, col] += sum(down_ratio)

        for i in range(complex.vertex_count):
            if i in members:
                continue
            coface = lookup(members + (i,))
            if coface >= 0:
                w_coface = weight(n + 1, coface)
                matrix[col, col] += w_coface / w_xi
            for k in range(n + 1):
                shifted = sorted(members[:k] + members[k + 1:] + (i,))
                target = lookup(shifted)
                if target < 0:
                    continue
                # kappa(target, xi minus i_k) = (-1)^(position of i in target)
                sign = (-1) ** k * (-1) ** shifted.index(i)
                up_ratio = w_coface / weight(n, target) if coface >= 0 else 0.0
                matrix[target, col] += sign * (down_ratio[k] - up_ratio)
    return matrix


def combinatorial_laplacian(complex: ComplexIndex, w: WeightFunction) -> np.ndarray:
    """A^-1 (D - W) for the weighted graph given by the 0- and 1-cells.

    A holds vertex weights, W the edge weights as a weighted adjacency
    matrix and D its row sums.
    """
    _require(complex, SIMPLICIAL, "combinatorial_laplacian")
    if complex.top_dim > 1:
        raise InputError("combinatorial_laplacian needs a complex of dimension <= 1", COMPONENT)
    m = complex.vertex_count
    adjacency = np.zeros((m, m))
    if complex.count(1):
        edges = complex.vertex_rows(1)
        adjacency[edges[:, 0], edges[:, 1]] = w[1]
        adjacency[edges[:, 1], edges[:, 0]] = w[1]
    degree = np.diag(adjacency.sum(axis=1))
    return (degree - adjacency) / w[0][:, None]
