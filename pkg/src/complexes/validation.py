"""Check the abstract cell complex axioms on a built complex."""

from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, Field

from complexes.cells import is_face
from complexes.incidence import incidence_matrix
from complexes.index import ComplexIndex
from core.logger import get_logger

logger = get_logger("validation")

IncidenceSource = Callable[[ComplexIndex, int], sp.spmatrix]


class AxiomViolation(BaseModel):
    """First pair of cells breaking an axiom."""

    check: str = Field(..., description="dim-monotonicity, support or composition")
    upper_dim: int
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    value: int = Field(..., description="Offending kappa or composed kappa value")


class ValidationReport(BaseModel):
    passed: bool
    checked_pairs: int = 0
    violation: Optional[AxiomViolation] = None


def _first_nonzero(matrix: sp.spmatrix) -> Optional[tuple[int, int, int]]:
    coo = sp.coo_matrix(matrix)
    nonzero = np.flatnonzero(coo.data)
    if nonzero.size == 0:
        return None
    order = np.lexsort((coo.col[nonzero], coo.row[nonzero]))
    k = nonzero[order[0]]
    return int(coo.row[k]), int(coo.col[k]), int(coo.data[k])


def validate_acc(complex: ComplexIndex,
                 incidence: Optional[IncidenceSource] = None) -> ValidationReport:
    """Verify dimension monotonicity, kappa support and sum_xi' kappa kappa = 0.

    ``incidence`` replaces the complex's own incidence matrices, which lets
    a caller check hand-modified incidence data.
    """
    incidence = incidence or incidence_matrix
    dims = list(complex.dims())
    matrices = {n: sp.csr_matrix(incidence(complex, n)) for n in dims[:-1]}
    checked = 0

    for n, matrix in matrices.items():
        expected = (complex.count(n + 1), complex.count(n))
        if matrix.shape != expected:
            logger.warning(f"Incidence block at {n} has shape {matrix.shape}, expected {expected}")
            return ValidationReport(
                passed=False,
                checked_pairs=checked,
                violation=AxiomViolation(check="dim-monotonicity", upper_dim=n + 1,
                                         upper=(), lower=(), value=0),
            )
        coo = matrix.tocoo()
        uppers = complex.cells(n + 1)
        lowers = complex.cells(n)
        for r, c, v in sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())):
            checked += 1
            if v == 0:
                continue
            upper = uppers[r]
            lower = lowers[c]
            if not is_face(lower, upper):
                return ValidationReport(
                    passed=False,
                    checked_pairs=checked,
                    violation=AxiomViolation(check="support", upper_dim=n + 1,
                                             upper=upper.vertices, lower=lower.vertices,
                                             value=int(v)),
                )

    for n in dims[1:-1]:
        composed = matrices[n] @ matrices[n - 1]
        checked += composed.shape[0] * composed.shape[1]
        hit = _first_nonzero(composed)
        if hit is not None:
            r, c, v = hit
            return ValidationReport(
                passed=False,
                checked_pairs=checked,
                violation=AxiomViolation(
                    check="composition",
                    upper_dim=n + 1,
                    upper=tuple(complex.vertex_rows(n + 1)[r].tolist()),
                    lower=tuple(complex.vertex_rows(n - 1)[c].tolist()),
                    value=v,
                ),
            )

    logger.debug(f"Cell complex axioms hold on {checked} checked pairs")
    return ValidationReport(passed=True, checked_pairs=checked)
