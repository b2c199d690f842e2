"""Structural identities relating the Laplacians of neighbouring dimensions."""

from typing import Optional

import numpy as np
from pydantic import BaseModel

from complexes.index import ComplexIndex
from core.logger import get_logger
from core.settings import settings
from hodge.decomposition import HodgeProjector, orthonormal_range
from hodge.laplacian import LaplacianBundle, coboundary_matrix
from hodge.spectrum import (
    Attribution,
    SpectrumReport,
    nonzero_spectrum,
    operator_eigenvalues,
    zero_threshold,
)

logger = get_logger("structure")


def numerical_rank(matrix, rank_tol: Optional[float] = None) -> int:
    dense = matrix.toarray() if hasattr(matrix, "toarray") else np.asarray(matrix)
    if dense.size == 0:
        return 0
    return orthonormal_range(dense.astype(float), settings.tol.RANK if rank_tol is None
                             else rank_tol).shape[1]


def cohomology_dimension(complex: ComplexIndex, n: int) -> int:
    """dim ker D_n - rank D_{n-1}, from the unweighted coboundaries."""
    d_n = coboundary_matrix(complex, n)
    d_prev = coboundary_matrix(complex, n - 1)
    return complex.count(n) - numerical_rank(d_n) - numerical_rank(d_prev)


def _same_multiset(a: np.ndarray, b: np.ndarray, tol: float) -> tuple[bool, float]:
    a, b = np.sort(a), np.sort(b)
    if a.shape != b.shape:
        return False, float("inf")
    gap = float(np.max(np.abs(a - b))) if a.size else 0.0
    return gap <= tol, gap


class SpectraUnionReport(BaseModel):
    dim: int
    union_holds: bool
    union_gap: float
    transport_holds: Optional[bool] = None
    transport_gap: Optional[float] = None


def spectra_union_report(bundle: LaplacianBundle, next_bundle: Optional[LaplacianBundle] = None,
                         tol: Optional[float] = None) -> SpectraUnionReport:
    """Check Spec_*(L_n) = Spec_*(L_n^up) + Spec_*(L_n^down) and, given the bundle
    at n+1, Spec_*(L_n^up) = Spec_*(L_{n+1}^down)."""
    tol = settings.tol.VERIFY if tol is None else tol
    full = operator_eigenvalues(bundle, "full")
    up = operator_eigenvalues(bundle, "up")
    down = operator_eigenvalues(bundle, "down")
    zero_tol = zero_threshold(full)
    holds, gap = _same_multiset(
        nonzero_spectrum(full, zero_tol),
        np.concatenate([nonzero_spectrum(up, zero_tol), nonzero_spectrum(down, zero_tol)]),
        tol,
    )
    report = SpectraUnionReport(dim=bundle.dim, union_holds=holds, union_gap=gap)
    if next_bundle is not None:
        next_down = operator_eigenvalues(next_bundle, "down")
        t_holds, t_gap = _same_multiset(
            nonzero_spectrum(up, zero_tol), nonzero_spectrum(next_down, zero_tol), tol
        )
        report.transport_holds = t_holds
        report.transport_gap = t_gap
    return report


class TransportCheck(BaseModel):
    eigenvalue: float
    rank: int
    image_rank: int
    residual: float


def eigenspace_transport(bundle: LaplacianBundle, next_bundle: LaplacianBundle,
                         report: SpectrumReport) -> list[TransportCheck]:
    """For each positive cluster of L_n, D_n maps its coexact part to lambda-eigenvectors of L_{n+1}.

    ``residual`` is max ||L_{n+1} D_n v - lambda D_n v||_w / ||D_n v||_w over the mapped basis.
    """
    projector = HodgeProjector(bundle)
    checks = []
    for cluster in report.clusters:
        if cluster.attribution is Attribution.HARMONIC:
            continue
        block = projector.coexact(report.eigenvectors[:, cluster.columns])
        root = np.sqrt(bundle.w)
        # Columns of the unprojected block have unit weighted norm
        basis = orthonormal_range(root[:, None] * block, settings.tol.RANK, reference=1.0) / root[:, None]
        if basis.shape[1] == 0:
            continue
        image = bundle.coboundary @ basis
        image_rank = numerical_rank(np.sqrt(next_bundle.w)[:, None] * image)
        moved = next_bundle.full @ image - cluster.eigenvalue * image
        norms = np.sqrt(np.sum(next_bundle.w[:, None] * image ** 2, axis=0))
        moved_norms = np.sqrt(np.sum(next_bundle.w[:, None] * moved ** 2, axis=0))
        residual = float(np.max(moved_norms / norms))
        checks.append(TransportCheck(eigenvalue=cluster.eigenvalue, rank=basis.shape[1],
                                     image_rank=image_rank, residual=residual))
    return checks
