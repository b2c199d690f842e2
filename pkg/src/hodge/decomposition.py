"""Weighted orthogonal projections onto exact / coexact / harmonic cochains."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

from core.errors import InputError
from core.logger import get_logger
from core.settings import settings
from hodge.laplacian import COMPONENT, LaplacianBundle, weighted_inner, weighted_norm

logger = get_logger("decomposition")


def orthonormal_range(matrix: np.ndarray, rank_tol: float,
                      reference: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of the column span, rank revealed by pivoted QR.

    Columns whose pivot falls below ``rank_tol`` times the leading pivot (or
    times ``reference`` when that is larger) are treated as dependent.
    """
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0))
    q, r, _ = la.qr(matrix, mode="economic", pivoting=True)
    pivots = np.abs(np.diag(r))
    if pivots.size == 0 or pivots[0] == 0:
        return np.zeros((rows, 0))
    scale = pivots[0] if reference is None else max(pivots[0], reference)
    rank = int(np.sum(pivots > rank_tol * scale))
    return q[:, :rank]


class HodgeProjector:
    """Projections of C^n onto B- = im delta_{n-1} and B+ = im delta_n^*.

    Work happens in the coordinates W_n^{1/2} f, where the weighted inner
    product becomes the Euclidean one.
    """

    def __init__(self, bundle: LaplacianBundle, rank_tol: Optional[float] = None):
        self.bundle = bundle
        self.rank_tol = settings.tol.RANK if rank_tol is None else rank_tol
        self._root = np.sqrt(bundle.w)
        exact_span = self._root[:, None] * bundle.prev_coboundary.toarray().astype(float)
        coexact_span = self._root[:, None] * bundle.adjoint().toarray()
        self.exact_basis = orthonormal_range(exact_span, self.rank_tol)
        self.coexact_basis = orthonormal_range(coexact_span, self.rank_tol)

    @property
    def exact_rank(self) -> int:
        return self.exact_basis.shape[1]

    @property
    def coexact_rank(self) -> int:
        return self.coexact_basis.shape[1]

    def _project(self, basis: np.ndarray, f: np.ndarray) -> np.ndarray:
        scaled = self._root.reshape((-1,) + (1,) * (f.ndim - 1)) * f
        projected = basis @ (basis.T @ scaled)
        return projected / self._root.reshape((-1,) + (1,) * (f.ndim - 1))

    def exact(self, f: np.ndarray) -> np.ndarray:
        return self._project(self.exact_basis, np.asarray(f, dtype=float))

    def coexact(self, f: np.ndarray) -> np.ndarray:
        return self._project(self.coexact_basis, np.asarray(f, dtype=float))


@dataclass(frozen=True)
class HodgeSplit:
    dim: int
    cochain: np.ndarray
    harmonic: np.ndarray
    exact: np.ndarray
    coexact: np.ndarray
    sum_residual: float
    orthogonality_residual: float
    harmonic_residual: float


def hodge_decompose(bundle: LaplacianBundle, cochain, projector: Optional[HodgeProjector] = None,
                    ) -> HodgeSplit:
    """Split a cochain into harmonic + exact (im delta_{n-1}) + coexact (im delta_n^*) parts.

    The harmonic part is the remainder after both projections, so
    ``sum_residual`` only records rounding. The projections themselves are
    checked by ``orthogonality_residual`` and by ``harmonic_residual``,
    ||L_n h||_w over max(||f||_w, ||L_n f||_w).
    """
    f = np.asarray(cochain, dtype=float)
    if f.shape != (bundle.size,):
        raise InputError(
            f"cochain has shape {f.shape}, C^{bundle.dim} has dimension {bundle.size}",
            COMPONENT,
        )
    projector = projector or HodgeProjector(bundle)
    exact = projector.exact(f)
    coexact = projector.coexact(f)
    harmonic = f - exact - coexact

    w = bundle.w
    scale = max(weighted_norm(w, f), np.finfo(float).tiny)
    sum_residual = weighted_norm(w, f - harmonic - exact - coexact) / scale
    pairs = ((harmonic, exact), (harmonic, coexact), (exact, coexact))
    orthogonality = max(abs(weighted_inner(w, a, b)) for a, b in pairs) / scale ** 2
    harmonic_residual = weighted_norm(w, bundle.full @ harmonic) / \
        max(scale, weighted_norm(w, bundle.full @ f))
    logger.debug(f"Hodge split at dim {bundle.dim}: orthogonality residual {orthogonality:.2e}")
    return HodgeSplit(
        dim=bundle.dim,
        cochain=f,
        harmonic=harmonic,
        exact=exact,
        coexact=coexact,
        sum_residual=sum_residual,
        orthogonality_residual=orthogonality,
        harmonic_residual=harmonic_residual,
    )
