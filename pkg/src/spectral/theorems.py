"""Programmatic checks of the closed-form spectral results."""

from typing import Iterable, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from complexes.index import FULL_SEQUENCE, SIMPLICIAL, ComplexIndex
from core.errors import ModelError, PreconditionError
from core.logger import get_logger
from core.settings import settings
from hodge.decomposition import HodgeProjector, hodge_decompose
from hodge.laplacian import laplacian, weighted_norm
from hodge.spectrum import spectrum
from spectral.eigenbasis import COMPONENT, EigenbasisGenerator, predicted_spectrum
from weights.factorization import factorization_test
from weights.functions import (
    Flavor,
    IndependentModel,
    Provenance,
    WeightFunction,
    independent_sequence_weights,
)

logger = get_logger("theorems")


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[Union[float, str, list]] = None


class VerificationReport(BaseModel):
    theorem: str
    tol: float
    passed: bool = True
    checks: list[CheckResult] = Field(default_factory=list)
    values: dict[str, Union[float, int, list, None]] = Field(default_factory=dict)

    def add(self, check: CheckResult) -> None:
        self.checks.append(check)
        self.passed = self.passed and check.passed
        level = logger.debug if check.passed else logger.warning
        level(f"[{self.theorem}] {check.name}: {'pass' if check.passed else 'FAIL'} {check.detail}")


def verify_sequence_theorem(complex: ComplexIndex, weights: Union[IndependentModel, WeightFunction],
                            n: int, tol: Optional[float] = None,
                            base_vertex: Optional[int] = None,
                            model_tol: Optional[float] = None) -> VerificationReport:
    """Integer spectrum, f(eta) eigen-residuals, trivial cohomology and spectral gap at dim n.

    An IndependentModel must be a valid sequence model, its weights summing
    to 1 within ``model_tol``; a WeightFunction is taken as is (its 0-cell
    weights seed the f(eta) basis), so perturbed models can be examined.
    """
    tol = settings.tol.VERIFY if tol is None else tol
    if complex.complex_kind != FULL_SEQUENCE or not complex.augmented:
        raise PreconditionError("the sequence theorem concerns the augmented full sequence complex",
                                COMPONENT)
    if n < 0:
        raise PreconditionError(f"the sequence theorem holds for n >= 0, got {n}", COMPONENT)

    if isinstance(weights, IndependentModel):
        if weights.flavor is not Flavor.SEQUENCE:
            raise PreconditionError("an independent sequence model is required", COMPONENT)
        try:
            w = independent_sequence_weights(complex, weights, model_tol)
        except ModelError as e:
            raise PreconditionError(e.message, COMPONENT) from e
        model = weights
    else:
        w = weights
        vector = w.vertex_vector()
        model = IndependentModel(tuple(vector / vector.sum()), Flavor.SEQUENCE)

    bundle = laplacian(complex, w, n)
    report = spectrum(bundle)
    result = VerificationReport(theorem="seq-spectrum", tol=tol)
    result.values["dim"] = n
    result.values["vertex_count"] = complex.vertex_count

    expected = predicted_spectrum(n, complex.vertex_count)
    observed = [(c.eigenvalue, c.multiplicity) for c in report.clusters]
    result.values["observed"] = [[value, mult] for value, mult in observed]
    result.values["predicted"] = [[value, mult] for value, mult in expected]
    off_integer = [value for value in report.eigenvalues if abs(value - round(value)) > tol]
    if off_integer:
        result.add(CheckResult(name="spectrum", passed=False,
                               detail="eigenvalue away from every integer",
                               witness=float(off_integer[0])))
    else:
        matches = len(observed) == len(expected) and all(
            abs(value - lam) <= tol and mult == exp_mult
            for (value, mult), (lam, exp_mult) in zip(observed, expected)
        )
        result.add(CheckResult(name="spectrum", passed=matches,
                               detail="clusters against predicted multiplicities",
                               witness=None if matches else str(observed)))

    generator = EigenbasisGenerator(complex, model, base_vertex)
    worst, worst_label = 0.0, None
    for item in generator.basis(n):
        f = item.coefficients
        residual = weighted_norm(bundle.w, bundle.full @ f - item.eigenvalue * f) / \
            weighted_norm(bundle.w, f)
        if residual > worst:
            worst, worst_label = residual, list(item.label.vertices)
    result.values["max_eigen_residual"] = worst
    result.add(CheckResult(name="eigenvectors", passed=worst <= tol,
                           detail=f"max relative residual {worst:.3e}",
                           witness=None if worst <= tol else worst_label))

    result.add(CheckResult(name="cohomology", passed=report.betti == 0,
                           detail=f"betti {report.betti}"))
    smallest = float(report.eigenvalues[0]) if len(report.eigenvalues) else float("nan")
    result.values["min_eigenvalue"] = smallest
    result.add(CheckResult(name="spectral-gap", passed=smallest >= 1 - tol,
                           detail=f"min eigenvalue {smallest:.17g}"))
    return result


def _is_full_simplex(complex: ComplexIndex) -> bool:
    m = complex.vertex_count
    return complex.complex_kind == SIMPLICIAL and complex.augmented and \
        complex.top_dim == m - 1 and complex.count(m - 1) == 1


def verify_simplicial_theorem(complex: ComplexIndex, w: WeightFunction, tol: Optional[float] = None,
                              vertex_probs=None) -> VerificationReport:
    """Measure max |L_n - alpha I| with alpha = sum_i w({i}) at every dimension.

    The identity check is paired with the product factorization test.
    ``vertex_probs`` (the independent distribution behind moment or
    empty-normalized weights) adds the check of alpha against sum p_i or
    sum p_i/(1-p_i).
    """
    tol = settings.tol.VERIFY if tol is None else tol
    if not _is_full_simplex(complex):
        raise PreconditionError("the simplicial identity theorem concerns the full simplex 2^[m]",
                                COMPONENT)
    empty_weight = float(w[-1][0])
    if abs(empty_weight - 1.0) > tol:
        raise PreconditionError(f"w(empty) = {empty_weight!r}, expected 1", COMPONENT)

    alpha = float(np.sum(w.vertex_vector()))
    result = VerificationReport(theorem="simp-identity", tol=tol)
    result.values["alpha"] = alpha
    deviations = []
    for n in complex.dims():
        operator = laplacian(complex, w, n).full.toarray()
        deviations.append(float(np.max(np.abs(operator - alpha * np.eye(len(operator))))))
    worst = max(deviations)
    result.values["deviations"] = deviations
    identity = worst <= tol * max(1.0, alpha)
    result.add(CheckResult(name="identity", passed=identity,
                           detail=f"max |L_n - alpha I| = {worst:.3e}",
                           witness=None if identity else int(np.argmax(deviations)) + complex.min_dim))

    factorization = factorization_test(w, max(tol, settings.tol.FACTORIZATION))
    result.values["factorization_witness"] = list(factorization.witness) \
        if factorization.witness else None
    result.add(CheckResult(
        name="factorization-agrees",
        passed=factorization.independent == identity,
        detail=f"independent={factorization.independent}, identity={identity}",
        witness=None if factorization.witness is None else list(factorization.witness),
    ))

    if vertex_probs is not None:
        probs = np.asarray(vertex_probs, dtype=float)
        if w.provenance is Provenance.MOMENT:
            expected = float(np.sum(probs))
        elif w.provenance is Provenance.EMPTY_NORMALIZED:
            expected = float(np.sum(probs / (1 - probs)))
        else:
            expected = None
        if expected is not None:
            result.values["expected_alpha"] = expected
            close = abs(alpha - expected) <= tol * max(1.0, expected)
            result.add(CheckResult(name="alpha", passed=close,
                                   detail=f"alpha {alpha!r} against {expected!r}"))
    return result


def verify_hodge(complex: ComplexIndex, w: WeightFunction, dims: Iterable[int],
                 samples: int = 100, tol: Optional[float] = None,
                 seed: int = 0) -> VerificationReport:
    """Decompose random cochains and check the parts are orthogonal with L_n h = 0 on the remainder."""
    tol = settings.tol.RANK if tol is None else tol
    rng = np.random.default_rng(seed)
    result = VerificationReport(theorem="hodge", tol=tol)
    for n in dims:
        bundle = laplacian(complex, w, n)
        projector = HodgeProjector(bundle)
        worst = 0.0
        for _ in range(samples):
            split = hodge_decompose(bundle, rng.standard_normal(bundle.size), projector)
            worst = max(worst, split.sum_residual, split.orthogonality_residual,
                        split.harmonic_residual)
        harmonic = bundle.size - projector.exact_rank - projector.coexact_rank
        result.values[f"harmonic_dim_{n}"] = harmonic
        result.add(CheckResult(name=f"decomposition-{n}", passed=worst <= tol,
                               detail=f"max residual {worst:.3e} over {samples} cochains"))
    return result


def verify_scaling(complex: ComplexIndex, w: WeightFunction, dims: Iterable[int],
                   alphas: Iterable[float] = (1e-3, 1.0, 1e3),
                   tol: Optional[float] = None) -> VerificationReport:
    """L_n built from alpha * w equals L_n built from w."""
    tol = settings.tol.VERIFY if tol is None else tol
    result = VerificationReport(theorem="scaling", tol=tol)
    for n in dims:
        reference = laplacian(complex, w, n).full.toarray()
        for alpha in alphas:
            scaled = laplacian(complex, w.scaled(alpha), n).full.toarray()
            gap = float(np.max(np.abs(scaled - reference))) if reference.size else 0.0
            result.add(CheckResult(name=f"scaling-{n}-{alpha:g}", passed=gap <= tol,
                                   detail=f"max entry gap {gap:.3e}"))
    return result


__all__ = [
    "CheckResult",
    "VerificationReport",
    "verify_sequence_theorem",
    "verify_simplicial_theorem",
    "verify_hodge",
    "verify_scaling",
]
