"""The explicit eigenbasis f(eta) of the independent-model sequence Laplacian."""

from dataclasses import dataclass
from functools import reduce
from math import comb
from typing import Optional

import numpy as np

from complexes.cells import Cell
from complexes.index import FULL_SEQUENCE, ComplexIndex
from core.errors import InputError, TruncationError
from core.settings import settings
from weights.functions import IndependentModel

COMPONENT = "spectral-analysis"


def _cochain_dim(complex: ComplexIndex, length: int) -> int:
    m = complex.vertex_count
    if m == 1:
        raise InputError("cochain dimension is ambiguous on one vertex; pass it explicitly",
                         COMPONENT)
    dim, size = -1, 1
    while size < length:
        size *= m
        dim += 1
    if size != length:
        raise InputError(f"{length} is not a cochain length over {m} vertices", COMPONENT)
    return dim


def tensor_product(complex: ComplexIndex, u, v, k: Optional[int] = None,
                   l: Optional[int] = None) -> np.ndarray:
    """(u (x) v)(sigma) = u(sigma[0..k]) * v(sigma[k+1..k+l+1]) for u in C^k, v in C^l.

    With base-m indexing (leftmost slot most significant) this is the
    Kronecker product of the coefficient vectors.
    """
    if complex.complex_kind != FULL_SEQUENCE:
        raise InputError("tensor_product needs a full sequence complex", COMPONENT)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    k = _cochain_dim(complex, len(u)) if k is None else k
    l = _cochain_dim(complex, len(v)) if l is None else l
    target = k + l + 1
    if target > complex.top_dim:
        raise TruncationError(
            f"u (x) v lives in dimension {target}, above the stored top dimension "
            f"{complex.top_dim}",
            COMPONENT,
        )
    m = complex.vertex_count
    if len(u) != m ** (k + 1) or len(v) != m ** (l + 1):
        raise InputError("cochain lengths do not match their dimensions", COMPONENT)
    return np.kron(u, v)


@dataclass(frozen=True)
class LabeledEigenvector:
    label: Cell
    a_count: int
    eigenvalue: int
    coefficients: np.ndarray


class EigenbasisGenerator:
    """Builds f(eta) for a fixed base vertex ``a`` and sequence vertex weights."""

    def __init__(self, complex: ComplexIndex, model: IndependentModel,
                 base_vertex: Optional[int] = None):
        if complex.complex_kind != FULL_SEQUENCE:
            raise InputError("the f(eta) basis lives on a full sequence complex", COMPONENT)
        self.complex = complex
        self.model = model
        self.weights = model.vector
        if self.weights.shape != (complex.vertex_count,):
            raise InputError("model size does not match the vertex count", COMPONENT)
        self.base_vertex = settings.BASE_VERTEX if base_vertex is None else int(base_vertex)
        if not 0 <= self.base_vertex < complex.vertex_count:
            raise InputError(f"base vertex {self.base_vertex} is not a vertex", COMPONENT)

    def f0(self, x: int) -> np.ndarray:
        """0-cochain: all ones for x = a; else w(x) at a, -w(a) at x, zero elsewhere."""
        a = self.base_vertex
        values = np.zeros(self.complex.vertex_count)
        if x == a:
            values[:] = 1.0
        else:
            values[a] = self.weights[x]
            values[x] = -self.weights[a]
        return values

    def f_eta(self, eta: Cell) -> LabeledEigenvector:
        """f(eta) = f0(eta_0) (x) ... (x) f0(eta_n), one factor per slot of eta."""
        n = eta.dim
        if n < 0:
            raise InputError("f(eta) is defined for dim >= 0", COMPONENT)
        if not self.complex.contains(eta):
            raise InputError(f"{eta.vertices} is not a cell of the complex", COMPONENT)
        coefficients = reduce(np.kron, (self.f0(x) for x in eta.vertices))
        a_count = sum(1 for x in eta.vertices if x == self.base_vertex)
        return LabeledEigenvector(
            label=eta,
            a_count=a_count,
            eigenvalue=(n + 2) - a_count,
            coefficients=coefficients,
        )

    def basis(self, n: int) -> list[LabeledEigenvector]:
        return [self.f_eta(eta) for eta in self.complex.cells(n)]

    def eigenvalue_two_space(self, n: int) -> np.ndarray:
        """Columns sum_{sigma_i = a} w(x) e_sigma - sum_{tau_i = x} w(a) e_tau for all i and x != a."""
        rows = self.complex.vertex_rows(n)
        a = self.base_vertex
        columns = []
        for i in range(n + 1):
            for x in range(self.complex.vertex_count):
                if x == a:
                    continue
                column = np.where(rows[:, i] == a, self.weights[x], 0.0)
                column = column - np.where(rows[:, i] == x, self.weights[a], 0.0)
                columns.append(column)
        return np.column_stack(columns) if columns else np.zeros((len(rows), 0))


def eigenbasis_matrix(generator: EigenbasisGenerator, n: int) -> tuple[np.ndarray, list[LabeledEigenvector]]:
    """Columns f(eta) for every eta in dimension n, with their labels."""
    labeled = generator.basis(n)
    return np.column_stack([item.coefficients for item in labeled]), labeled


def predicted_spectrum(n: int, m: int) -> list[tuple[int, int]]:
    """Eigenvalues 1..n+2 with multiplicity C(n+1, lambda-1) (m-1)^(lambda-1); zeros omitted."""
    if n < 0 or m < 1:
        raise InputError(f"predicted_spectrum needs n >= 0 and m >= 1, got n={n}, m={m}",
                         COMPONENT)
    result = []
    for eigenvalue in range(1, n + 3):
        multiplicity = comb(n + 1, eigenvalue - 1) * (m - 1) ** (eigenvalue - 1)
        if multiplicity:
            result.append((eigenvalue, multiplicity))
    return result
