"""Spectral coordinates for the cells of one dimension."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from complexes.cells import Cell
from core.errors import InputError
from core.logger import get_logger
from hodge.laplacian import LaplacianBundle
from hodge.spectrum import Attribution, SpectrumReport, _sign_convention
from spectral.eigenbasis import COMPONENT

logger = get_logger("embedding")


class Scaling(str, Enum):
    NONE = "none"
    INVERSE_SQRT_EIGENVALUE = "inverse-sqrt-eigenvalue"


@dataclass(frozen=True)
class Embedding:
    dim: int
    cells: list[Cell]
    coordinates: np.ndarray
    eigenvalues: np.ndarray
    skipped: int


def _is_constant(column: np.ndarray) -> bool:
    scale = np.max(np.abs(column)) if column.size else 0.0
    return scale > 0 and np.ptp(column) <= 1e-9 * scale


def _bottom_skip(report: SpectrumReport) -> int:
    if not report.clusters:
        return 0
    bottom = report.clusters[0]
    if bottom.attribution is Attribution.HARMONIC:
        return bottom.multiplicity
    if bottom.multiplicity == 1 and _is_constant(report.eigenvectors[:, 0]):
        return 1
    return 0


def spectral_embed(bundle: LaplacianBundle, report: SpectrumReport, d: int,
                   scaling=Scaling.NONE) -> Embedding:
    """Coordinates from the d lowest eigenvectors above the bottom harmonic or constant cluster.

    Columns are rescaled to unit Euclidean norm, so the result does not
    depend on a global factor in the weights.
    """
    scaling = Scaling(scaling)
    if report.dim != bundle.dim:
        raise InputError(f"spectrum of dim {report.dim} does not belong to L_{bundle.dim}",
                         COMPONENT)
    size = bundle.size
    if d < 0 or d > max(size - 1, 0):
        raise InputError(f"cannot embed with {d} components: C^{bundle.dim} has dimension {size}",
                         COMPONENT)
    skip = _bottom_skip(report)
    if skip + d > size:
        raise InputError(
            f"only {size - skip} eigenvectors remain after skipping the bottom cluster, "
            f"{d} requested",
            COMPONENT,
        )

    values = np.asarray(report.eigenvalues[skip:skip + d], dtype=float)
    block = np.array(report.eigenvectors[:, skip:skip + d], dtype=float)
    if d:
        block = block / np.linalg.norm(block, axis=0)
        if scaling is Scaling.INVERSE_SQRT_EIGENVALUE:
            if np.any(values <= 0):
                raise InputError("1/sqrt(lambda) scaling needs positive eigenvalues", COMPONENT)
            block = block / np.sqrt(values)
        block = _sign_convention(block)
    logger.debug(f"Embedded {size} cells of dim {bundle.dim} with {d} components, skipped {skip}")
    return Embedding(
        dim=bundle.dim,
        cells=bundle.complex.cells(bundle.dim),
        coordinates=block.reshape(size, d),
        eigenvalues=values,
        skipped=skip,
    )
