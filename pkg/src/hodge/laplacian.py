"""Coboundary matrices, weighted adjoints and the up/down/full Laplacians."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from complexes.incidence import incidence_matrix
from complexes.index import ComplexIndex
from core.errors import InputError
from core.logger import get_logger
from weights.functions import WeightFunction

logger = get_logger("laplacian")

COMPONENT = "hodge-core"


def coboundary_matrix(complex: ComplexIndex, n: int) -> sp.csr_matrix:
    """D_n with entry (sigma, tau) = kappa(sigma, tau), sigma in dim n+1, tau in dim n.

    Dimensions below the stored range give zero-size matrices. Above it a
    sequence complex raises TruncationError, while a simplicial complex has
    no cells there and also gives zero-size matrices.
    """
    return incidence_matrix(complex, n)


def _dimension_weights(w: WeightFunction, n: int) -> np.ndarray:
    if n in w.values:
        return w[n]
    return np.ones(0)


def weighted_inner(weights: np.ndarray, f: np.ndarray, g: np.ndarray) -> float:
    """<f, g>_w = sum_sigma w(sigma) f(sigma) g(sigma)."""
    return float(np.sum(weights * np.asarray(f) * np.asarray(g)))


def weighted_norm(weights: np.ndarray, f: np.ndarray) -> float:
    return float(np.sqrt(max(weighted_inner(weights, f, f), 0.0)))


def _diag(values: np.ndarray) -> sp.csr_matrix:
    k = len(values)
    index = np.arange(k)
    return sp.csr_matrix((np.asarray(values, dtype=float), (index, index)), shape=(k, k))


@dataclass(frozen=True)
class LaplacianBundle:
    """All operators of dimension ``dim`` for one weighted complex.

    ``coboundary`` is D_n (dim -> dim+1) and ``prev_coboundary`` is D_{n-1};
    ``w_prev``, ``w``, ``w_next`` are the weight diagonals of dims n-1, n, n+1.
    ``up``, ``down`` and ``full`` act on column vectors in the e_sigma basis.
    """

    complex: ComplexIndex
    weights: WeightFunction
    dim: int
    coboundary: sp.csr_matrix
    prev_coboundary: sp.csr_matrix
    w_prev: np.ndarray
    w: np.ndarray
    w_next: np.ndarray
    up: sp.csr_matrix
    down: sp.csr_matrix
    full: sp.csr_matrix

    @property
    def size(self) -> int:
        return len(self.w)

    def adjoint(self) -> sp.csr_matrix:
        """delta_n^* = W_n^-1 D_n^T W_{n+1}, mapping C^{n+1} to C^n."""
        return _adjoint(self.coboundary, self.w, self.w_next)

    def prev_adjoint(self) -> sp.csr_matrix:
        """delta_{n-1}^* = W_{n-1}^-1 D_{n-1}^T W_n, mapping C^n to C^{n-1}."""
        return _adjoint(self.prev_coboundary, self.w_prev, self.w)

    def symmetrized(self, operator: Optional[sp.spmatrix] = None) -> np.ndarray:
        """W^{1/2} L W^{-1/2} as a dense symmetric array (exact symmetry enforced)."""
        operator = self.full if operator is None else operator
        root = np.sqrt(self.w)
        dense = (_diag(root) @ operator @ _diag(1.0 / root)).toarray()
        return 0.5 * (dense + dense.T)


def _adjoint(coboundary: sp.csr_matrix, w_low: np.ndarray, w_high: np.ndarray) -> sp.csr_matrix:
    return sp.csr_matrix(_diag(1.0 / w_low) @ coboundary.T.astype(float) @ _diag(w_high))


def adjoint_matrix(bundle: LaplacianBundle) -> sp.csr_matrix:
    """Matrix of delta_n^* in the e_sigma bases."""
    return bundle.adjoint()


def laplacian(complex: ComplexIndex, w: WeightFunction, n: int) -> LaplacianBundle:
    """Assemble D_n, D_{n-1}, the weight diagonals and the Laplacians at dimension n.

    L_n^up = W_n^-1 D_n^T W_{n+1} D_n and L_n^down = D_{n-1} W_{n-1}^-1 D_{n-1}^T W_n.
    """
    if w.complex is not complex:
        raise InputError("weight function belongs to a different complex", COMPONENT)
    if n not in complex.dims():
        raise InputError(
            f"dimension {n} is outside the stored range {complex.min_dim}..{complex.top_dim}",
            COMPONENT,
        )
    complex.require_dim(n, "laplacian")

    d_n = coboundary_matrix(complex, n)
    d_prev = coboundary_matrix(complex, n - 1)
    w_prev = _dimension_weights(w, n - 1)
    w_n = _dimension_weights(w, n)
    w_next = _dimension_weights(w, n + 1)

    up = sp.csr_matrix(_adjoint(d_n, w_n, w_next) @ d_n.astype(float))
    down = sp.csr_matrix(d_prev.astype(float) @ _adjoint(d_prev, w_prev, w_n))
    bundle = LaplacianBundle(
        complex=complex,
        weights=w,
        dim=n,
        coboundary=d_n,
        prev_coboundary=d_prev,
        w_prev=w_prev,
        w=w_n,
        w_next=w_next,
        up=up,
        down=down,
        full=sp.csr_matrix(up + down),
    )
    logger.debug(
        f"Assembled Laplacian bundle at dim {n}: C^n has {bundle.size} cells, "
        f"D_n {d_n.shape}, D_(n-1) {d_prev.shape}"
    )
    return bundle
