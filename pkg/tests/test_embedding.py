import numpy as np
import pytest

from complexes.index import build_full_sequence_complex, build_simplicial_complex
from core.errors import InputError
from hodge.laplacian import laplacian
from hodge.spectrum import spectrum
from spectral.embedding import Scaling, spectral_embed
from weights.functions import independent_sequence_weights


def embed(complex, w, n, d, scaling=Scaling.NONE):
    bundle = laplacian(complex, w, n)
    return spectral_embed(bundle, spectrum(bundle), d, scaling)


def test_zero_components():
    complex = build_full_sequence_complex(2, max_dim=1)
    w = independent_sequence_weights(complex, [0.4, 0.6])
    result = embed(complex, w, 1, 0)
    assert result.coordinates.shape == (4, 0)
    assert len(result.cells) == 4


def test_too_many_components(triangle_boundary):
    complex, w = triangle_boundary
    with pytest.raises(InputError):
        embed(complex, w, 1, 3)
    with pytest.raises(InputError):
        embed(complex, w, 1, -1)


def test_constant_bottom_eigenvector_is_skipped():
    complex = build_full_sequence_complex(3, max_dim=0)
    w = independent_sequence_weights(complex, [0.2, 0.3, 0.5])
    result = embed(complex, w, 0, 2)
    assert result.skipped == 1
    assert result.eigenvalues == pytest.approx([2.0, 2.0])
    assert np.allclose(np.linalg.norm(result.coordinates, axis=0), 1.0)


def test_harmonic_cluster_is_skipped(triangle_boundary):
    complex, w = triangle_boundary
    result = embed(complex, w, 1, 2)
    assert result.skipped == 1
    assert result.eigenvalues == pytest.approx([3.0, 3.0])


def test_global_scaling_does_not_move_points(make_random_weights):
    complex = build_simplicial_complex(5, [(0, 1, 2), (2, 3), (3, 4), (1, 4)])
    w = make_random_weights(complex)
    first = embed(complex, w, 0, 3)
    second = embed(complex, w.scaled(250.0), 0, 3)
    assert np.allclose(first.coordinates, second.coordinates, atol=1e-8)


def test_inverse_sqrt_scaling(make_random_weights):
    complex = build_simplicial_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    w = make_random_weights(complex)
    result = embed(complex, w, 0, 2, Scaling.INVERSE_SQRT_EIGENVALUE)
    norms = np.linalg.norm(result.coordinates, axis=0)
    assert np.allclose(norms, 1.0 / np.sqrt(result.eigenvalues))


def test_spectrum_must_match_dimension(triangle_boundary):
    complex, w = triangle_boundary
    with pytest.raises(InputError):
        spectral_embed(laplacian(complex, w, 0), spectrum(laplacian(complex, w, 1)), 1)


def test_eigenvalue_two_coordinates_add_up_over_positions():
    complex = build_full_sequence_complex(3, max_dim=1)
    w = independent_sequence_weights(complex, [0.2, 0.3, 0.5])
    result = embed(complex, w, 1, 4)
    assert result.skipped == 1
    assert result.eigenvalues == pytest.approx([2.0] * 4)

    # (x, y) sits at index 3x + y, so the coordinates split as g_0(x) + g_1(y)
    grid = result.coordinates.reshape(3, 3, 4)
    for x, other_x in [(0, 1), (0, 2), (1, 2)]:
        for y, other_y in [(0, 1), (0, 2), (1, 2)]:
            assert np.allclose(grid[x, y] + grid[other_x, other_y],
                               grid[x, other_y] + grid[other_x, y], atol=1e-10)

    gaps = np.linalg.norm(result.coordinates[:, None, :] - result.coordinates[None, :, :], axis=2)
    assert np.min(gaps[~np.eye(9, dtype=bool)]) > 1e-6
