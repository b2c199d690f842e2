from spectral.eigenbasis import EigenbasisGenerator, predicted_spectrum, tensor_product
from spectral.embedding import spectral_embed
from spectral.theorems import verify_sequence_theorem, verify_simplicial_theorem

__all__ = [
    "EigenbasisGenerator",
    "predicted_spectrum",
    "tensor_product",
    "spectral_embed",
    "verify_sequence_theorem",
    "verify_simplicial_theorem",
]
