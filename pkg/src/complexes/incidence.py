"""Sparse integer incidence matrices kappa between adjacent dimensions."""

import numpy as np
import scipy.sparse as sp

from complexes.index import ComplexIndex


def incidence_matrix(complex: ComplexIndex, n: int) -> sp.csr_matrix:
    """Matrix with entry (sigma, tau) = kappa(sigma, tau), sigma in dim n+1, tau in dim n.

    Each (n+1)-cell contributes (-1)^j at the face obtained by removing slot
    j; repeated faces (e.g. (a,a) -> (a)) sum, so cancellations are exact.
    """
    rows_count = complex.count(n + 1)
    cols_count = complex.count(n)
    if rows_count == 0 or cols_count == 0:
        return sp.csr_matrix((rows_count, cols_count), dtype=np.int64)

    row_ids = np.arange(rows_count, dtype=np.int64)
    rows, cols, vals = [], [], []
    for position in range(n + 2):
        faces = complex.face_indices(n + 1, position)
        keep = faces >= 0
        rows.append(row_ids[keep])
        cols.append(faces[keep])
        vals.append(np.full(int(keep.sum()), (-1) ** position, dtype=np.int64))

    matrix = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(rows_count, cols_count),
    ).tocsr()
    matrix.sum_duplicates()
    matrix.eliminate_zeros()
    return matrix
