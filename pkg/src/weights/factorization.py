"""Detect whether a weight function on a simplicial complex is a product of vertex weights."""

from typing import Optional

import numpy as np
from pydantic import BaseModel

from complexes.index import SIMPLICIAL
from core.errors import InputError, PreconditionError
from core.logger import get_logger
from core.settings import settings
from weights.distribution import COMPONENT
from weights.functions import WeightFunction

logger = get_logger("factorization")


class FactorizationResult(BaseModel):
    independent: bool
    vector: Optional[list[float]] = None
    witness: Optional[tuple[int, ...]] = None
    deviation: float = 0.0


def factorization_test(w: WeightFunction, tol: Optional[float] = None) -> FactorizationResult:
    """Check w(xi) = prod_{i in xi} w({i}) face by face, within relative ``tol``.

    On success the recovered vector is w({i}); otherwise the first face (in
    dimension then index order) breaking the product rule is returned with
    its relative deviation.
    """
    tol = settings.tol.FACTORIZATION if tol is None else tol
    complex = w.complex
    if complex.complex_kind != SIMPLICIAL:
        raise InputError("factorization_test needs a simplicial complex", COMPONENT)
    if not complex.augmented:
        raise PreconditionError("factorization_test needs the empty cell with w(empty) = 1",
                                COMPONENT)
    empty_weight = float(w[-1][0])
    if abs(empty_weight - 1.0) > tol:
        raise PreconditionError(f"w(empty) = {empty_weight!r}, expected 1", COMPONENT)

    vector = w.vertex_vector()
    for n in range(1, complex.top_dim + 1):
        rows = complex.vertex_rows(n)
        predicted = np.prod(vector[rows], axis=1)
        deviation = np.abs(w[n] - predicted) / predicted
        bad = np.flatnonzero(deviation > tol)
        if bad.size:
            k = int(bad[0])
            witness = tuple(rows[k].tolist())
            logger.debug(f"Product rule fails at {witness} with deviation {deviation[k]:.3e}")
            return FactorizationResult(independent=False, witness=witness,
                                       deviation=float(deviation[k]))
    return FactorizationResult(independent=True, vector=vector.tolist())
