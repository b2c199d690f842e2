"""Weighted coboundaries, Hodge Laplacians, spectra and decompositions."""

from hodge.decomposition import HodgeProjector, hodge_decompose
from hodge.laplacian import LaplacianBundle, adjoint_matrix, laplacian
from hodge.spectrum import SpectrumReport, spectrum

__all__ = [
    "HodgeProjector",
    "hodge_decompose",
    "LaplacianBundle",
    "adjoint_matrix",
    "laplacian",
    "SpectrumReport",
    "spectrum",
]
