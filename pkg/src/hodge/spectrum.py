"""Eigen-decomposition of the Laplacian with multiplicity clusters."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg as la

from core.errors import SizeError
from core.logger import get_logger
from core.settings import settings
from hodge.decomposition import HodgeProjector
from hodge.laplacian import COMPONENT, LaplacianBundle

logger = get_logger("spectrum")

# Share of an eigenvector's squared norm that counts as significant
MIXED_SHARE = 1e-6


class Attribution(str, Enum):
    UP = "up"
    DOWN = "down"
    BOTH = "both"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class EigenCluster:
    eigenvalue: float
    multiplicity: int
    attribution: Attribution
    start: int

    @property
    def columns(self) -> slice:
        return slice(self.start, self.start + self.multiplicity)


@dataclass(frozen=True)
class SpectrumReport:
    """Spectrum of L_n; ``eigenvectors`` columns are W_n-orthonormal in the e_sigma basis."""

    dim: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    clusters: tuple[EigenCluster, ...]
    betti: int

    def multiplicities(self) -> list[tuple[float, int]]:
        return [(c.eigenvalue, c.multiplicity) for c in self.clusters]


def symmetric_eigh(matrix: np.ndarray, what: str = "operator") -> tuple[np.ndarray, np.ndarray]:
    """Dense symmetric eigensolve, refused above the configured size limit."""
    size = matrix.shape[0]
    if size > settings.DENSE_LIMIT:
        raise SizeError(
            f"{what} has dimension {size}, above the dense eigensolver limit "
            f"{settings.DENSE_LIMIT}",
            size,
            COMPONENT,
        )
    if size == 0:
        return np.zeros(0), np.zeros((0, 0))
    return la.eigh(matrix)


def cluster_eigenvalues(values: np.ndarray, cluster_tol: float) -> list[tuple[int, int]]:
    """Group sorted eigenvalues into (start, stop) runs separated by relative gaps."""
    groups = []
    start = 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > cluster_tol * max(1.0, abs(values[k])):
            groups.append((start, k))
            start = k
    return groups


def nonzero_spectrum(values: np.ndarray, zero_tol: float) -> np.ndarray:
    """Spec_*: eigenvalues whose magnitude exceeds ``zero_tol``, sorted."""
    values = np.sort(np.asarray(values, dtype=float))
    return values[np.abs(values) > zero_tol]


def zero_threshold(values: np.ndarray, rank_tol: Optional[float] = None) -> float:
    rank_tol = settings.tol.RANK if rank_tol is None else rank_tol
    top = float(np.max(np.abs(values))) if len(values) else 0.0
    return rank_tol * max(1.0, top)


def _sign_convention(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so their first entry of non-negligible magnitude is positive."""
    result = vectors.copy()
    for j in range(result.shape[1]):
        column = result[:, j]
        scale = np.max(np.abs(column)) if column.size else 0.0
        significant = np.flatnonzero(np.abs(column) > 1e-12 * max(scale, 1e-300))
        if significant.size and column[significant[0]] < 0:
            result[:, j] = -column
    return result


def spectrum(bundle: LaplacianBundle, cluster_tol: Optional[float] = None,
             projector: Optional[HodgeProjector] = None) -> SpectrumReport:
    """Eigenvalues, W-orthonormal eigenvectors, clusters with up/down attribution, Betti number."""
    cluster_tol = settings.tol.CLUSTER if cluster_tol is None else cluster_tol
    values, vectors = symmetric_eigh(bundle.symmetrized(), f"L_{bundle.dim}")
    root = np.sqrt(bundle.w)
    # Back from the symmetrized basis: v = W^{-1/2} u
    vectors = _sign_convention(vectors / root[:, None]) if len(values) else vectors

    zero_tol = zero_threshold(values)
    projector = projector or HodgeProjector(bundle)
    clusters = []
    betti = 0
    for start, stop in cluster_eigenvalues(values, cluster_tol):
        mean = float(np.mean(values[start:stop]))
        multiplicity = stop - start
        if abs(mean) <= zero_tol:
            attribution = Attribution.HARMONIC
            betti += multiplicity
        else:
            attribution = _attribute(projector, bundle.w, vectors[:, start:stop])
            if attribution is Attribution.BOTH:
                logger.warning(
                    f"Eigenvalue {mean:.12g} at dim {bundle.dim} is shared by the up and down parts"
                )
        clusters.append(EigenCluster(mean, multiplicity, attribution, start))

    logger.debug(f"Spectrum at dim {bundle.dim}: {len(clusters)} clusters, betti {betti}")
    return SpectrumReport(
        dim=bundle.dim,
        eigenvalues=values,
        eigenvectors=vectors,
        clusters=tuple(clusters),
        betti=betti,
    )


def _attribute(projector: HodgeProjector, w: np.ndarray, block: np.ndarray) -> Attribution:
    total = float(np.sum(w[:, None] * block ** 2))
    up = projector.coexact(block)
    down = projector.exact(block)
    up_share = float(np.sum(w[:, None] * up ** 2)) / total
    down_share = float(np.sum(w[:, None] * down ** 2)) / total
    if up_share > MIXED_SHARE and down_share > MIXED_SHARE:
        return Attribution.BOTH
    return Attribution.UP if up_share >= down_share else Attribution.DOWN


def operator_eigenvalues(bundle: LaplacianBundle, part: str = "full") -> np.ndarray:
    """Sorted eigenvalues of L_n, L_n^up or L_n^down via the symmetrized form."""
    operator = {"full": bundle.full, "up": bundle.up, "down": bundle.down}[part]
    values, _ = symmetric_eigh(bundle.symmetrized(operator), f"L_{bundle.dim}^{part}")
    return values
