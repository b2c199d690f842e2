"""Job facade: loads descriptions, runs one computation and shapes its output."""

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

import numpy as np

from complexes.cells import Cell
from complexes.factory import get_complex
from complexes.index import ComplexIndex, full_simplex
from core.errors import InputError
from core.job_config import (
    ComplexSpec,
    JobConfig,
    Vocabulary,
    WeightsSpec,
    load_cochain,
    load_complex_spec,
    load_weights_spec,
    vertex_vector,
)
from core.logger import get_logger
from core.settings import Settings, settings
from hodge.decomposition import hodge_decompose
from hodge.laplacian import laplacian
from hodge.spectrum import spectrum
from spectral.embedding import spectral_embed
from spectral.theorems import (
    VerificationReport,
    verify_hodge,
    verify_scaling,
    verify_sequence_theorem,
    verify_simplicial_theorem,
)
from weights.distribution import Distribution, independent_simplicial_distribution
from weights.empirical import fit_empirical
from weights.functions import (
    Flavor,
    IndependentModel,
    WeightFunction,
    conditional_weights,
    empty_normalized,
    independent_sequence_weights,
    independent_simplicial_weights,
    moment_map,
    raw_weights,
)

logger = get_logger("hodge_service")

COMPONENT = "cli"


@dataclass
class JobResult:
    """What a command produced: a JSON document, optionally a CSV table, and a verdict."""

    document: dict[str, Any]
    table: Optional[tuple[Sequence[str], list[list[Any]]]] = None
    passed: bool = True


@dataclass
class Workspace:
    spec: ComplexSpec
    vocabulary: Vocabulary
    complex: ComplexIndex
    weights: Optional[WeightFunction] = None
    model: Optional[IndependentModel] = None
    vertex_probs: Optional[list[float]] = None
    names: dict[int, list[str]] = field(default_factory=dict)

    def cell_names(self, n: int) -> list[str]:
        if n not in self.names:
            self.names[n] = [self.vocabulary.name_of(c) for c in self.complex.cells(n)]
        return self.names[n]


class HodgeService:
    """Runs the hodgeseq commands against files on disk."""

    def __init__(self, config: Optional[Settings] = None):
        self.settings = config or settings

    def _job_settings(self, job: JobConfig) -> Settings:
        """Configured settings with the flags given for this job applied on top.

        ``--tol`` covers verification as well as the distribution and
        factorization checks on the weights.
        """
        return self.settings.with_overrides(
            cell_budget=job.cell_budget,
            tol_verify=job.tol,
            tol_distribution=job.tol,
            tol_factorization=job.tol,
            tol_cluster=job.cluster_tol,
        )

    def _cluster_tol(self, job: JobConfig) -> float:
        return self._job_settings(job).tol.CLUSTER

    def _cell_budget(self, job: JobConfig) -> int:
        return self._job_settings(job).CELL_BUDGET

    def open_workspace(self, job: JobConfig, with_weights: bool = True) -> Workspace:
        spec = load_complex_spec(job.complex_path)
        augmented = False if not job.augmented else None
        complex = get_complex(spec, augmented=augmented, cell_budget=self._cell_budget(job))
        workspace = Workspace(spec=spec, vocabulary=spec.vocabulary, complex=complex)
        if with_weights:
            self._attach_weights(workspace, load_weights_spec(job.weights_path),
                                 self._job_settings(job))
        return workspace

    def _parse_cells(self, workspace: Workspace, values: dict[str, float]) -> dict[Cell, float]:
        kind = workspace.spec.cell_kind
        parsed: dict[Cell, float] = {}
        for name, value in values.items():
            cell = workspace.vocabulary.parse_cell(name, kind)
            if cell in parsed:
                raise InputError(f"cell {name!r} is listed twice", COMPONENT)
            parsed[cell] = value
        return parsed

    def _attach_weights(self, workspace: Workspace, spec: WeightsSpec, config: Settings) -> None:
        complex = workspace.complex
        vocabulary = workspace.vocabulary
        tol = config.tol.DISTRIBUTION
        logger.debug(f"Building {spec.model} weights")

        if spec.model == "independent":
            vector = vertex_vector(spec.vertex_weights, vocabulary)
            if workspace.spec.kind == "sequence":
                workspace.model = IndependentModel(tuple(vector), Flavor.SEQUENCE)
                workspace.weights = independent_sequence_weights(complex, workspace.model, tol)
            else:
                workspace.model = IndependentModel(tuple(vector), Flavor.SIMPLICIAL)
                workspace.weights = independent_simplicial_weights(complex, workspace.model)
            return

        if spec.model == "raw":
            workspace.weights = raw_weights(complex, self._parse_cells(workspace, spec.weights))
            return

        if spec.vertex_probabilities is not None:
            workspace.vertex_probs = vertex_vector(spec.vertex_probabilities, vocabulary)

        if spec.model == "conditional":
            support = self._parse_cells(workspace, spec.probabilities)
            workspace.weights = conditional_weights(complex, Distribution(complex, support, tol=tol))
        elif spec.model == "moment":
            if workspace.spec.kind != "simplicial":
                raise InputError("moment weights need a simplicial complex", COMPONENT)
            simplex = full_simplex(complex.vertex_count, cell_budget=config.CELL_BUDGET)
            if spec.probabilities is not None:
                support = self._parse_cells(workspace, spec.probabilities)
                distribution = Distribution(simplex, support, tol=tol)
            else:
                distribution = independent_simplicial_distribution(simplex, workspace.vertex_probs, tol)
            workspace.weights = moment_map(complex, distribution)
        else:
            if spec.probabilities is not None:
                distribution = Distribution(complex, self._parse_cells(workspace, spec.probabilities),
                                            tol=tol)
            else:
                distribution = independent_simplicial_distribution(complex, workspace.vertex_probs, tol)
            workspace.weights = empty_normalized(complex, distribution)

    def _dims(self, job: JobConfig, complex: ComplexIndex, lowest: Optional[int] = None) -> list[int]:
        """The dimensions given by --dims, else every assemblable dimension from ``lowest`` up."""
        if job.dims is not None:
            return job.dims
        low = complex.min_dim if lowest is None else max(lowest, complex.min_dim)
        return [n for n in complex.dims() if low <= n <= complex.max_dim]

    # build / ingest

    def build(self, job: JobConfig) -> JobResult:
        workspace = self.open_workspace(job, with_weights=False)
        complex = workspace.complex
        spec = workspace.spec
        document: dict[str, Any] = {
            "kind": spec.kind,
            "vertices": workspace.vocabulary.names,
            "max_dim": complex.max_dim,
            "augmented": complex.augmented,
        }
        if spec.kind == "simplicial":
            document["facets"] = [list(f) for f in spec.facets] if spec.facets is not None else None
        document["counts"] = {str(n): c for n, c in complex.counts().items()}
        document["euler_characteristic"] = complex.euler_characteristic()
        document["cells"] = {str(n): workspace.cell_names(n) for n in complex.dims()}
        logger.info(f"Built {spec.kind} complex with counts {complex.counts()}")
        return JobResult(document)

    def ingest(self, job: JobConfig) -> JobResult:
        with open(job.corpus_path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
        names, complex, distribution = fit_empirical(
            lines, job.max_dim, job.smoothing, cell_budget=self._cell_budget(job)
        )
        vocabulary = Vocabulary(names=names)
        probabilities: dict[str, float] = {}
        lengths: dict[str, dict[str, float]] = {}
        for n in complex.dims():
            probs = distribution.dimension_array(n)
            mass = float(np.sum(probs))
            cells = complex.cells(n)
            for cell, p in zip(cells, probs.tolist()):
                if p > 0:
                    probabilities[vocabulary.name_of(cell)] = p
            if mass > 0:
                lengths[str(n + 1)] = {
                    vocabulary.name_of(cell): p / mass
                    for cell, p in zip(cells, probs.tolist()) if p > 0
                }
        document = {
            "complex": {"kind": "sequence", "vertices": names, "max_dim": job.max_dim,
                        "augmented": True},
            "model": "conditional",
            "smoothing": job.smoothing,
            "probabilities": probabilities,
            "lengths": lengths,
        }
        return JobResult(document)

    # hodge-core

    def laplacian(self, job: JobConfig) -> JobResult:
        workspace = self.open_workspace(job)
        n = job.dim
        bundle = laplacian(workspace.complex, workspace.weights, n)
        operator = {"full": bundle.full, "up": bundle.up, "down": bundle.down}[job.part]
        matrix = operator.toarray()
        names = workspace.cell_names(n)
        rows = [[name, *row] for name, row in zip(names, matrix.tolist())]
        document = {"dim": n, "part": job.part, "cells": names, "matrix": matrix}
        return JobResult(document, (["cell", *names], rows))

    def spectrum(self, job: JobConfig) -> JobResult:
        workspace = self.open_workspace(job)
        cluster_tol = self._cluster_tol(job)
        reports = []
        rows = []
        for n in self._dims(job, workspace.complex):
            report = spectrum(laplacian(workspace.complex, workspace.weights, n), cluster_tol)
            for cluster in report.clusters:
                rows.append([n, cluster.eigenvalue, cluster.multiplicity, cluster.attribution.value])
            reports.append({
                "dim": n,
                "betti": report.betti,
                "eigenvalues": report.eigenvalues,
                "clusters": [
                    {"eigenvalue": c.eigenvalue, "multiplicity": c.multiplicity,
                     "attribution": c.attribution}
                    for c in report.clusters
                ],
            })
            logger.info(f"dim {n}: {len(report.clusters)} clusters, betti {report.betti}")
        return JobResult({"spectra": reports},
                         (["dim", "eigenvalue", "multiplicity", "attribution"], rows))

    def decompose(self, job: JobConfig) -> JobResult:
        workspace = self.open_workspace(job)
        n = job.dim
        bundle = laplacian(workspace.complex, workspace.weights, n)
        cochain = np.zeros(bundle.size)
        for cell, value in self._parse_cells(workspace, load_cochain(job.cochain_path)).items():
            if cell.dim != n:
                raise InputError(f"cochain cell {workspace.vocabulary.name_of(cell)} is not in "
                                 f"dimension {n}", COMPONENT)
            cochain[workspace.complex.index_of(cell)] = value
        split = hodge_decompose(bundle, cochain)
        names = workspace.cell_names(n)
        parts = {"harmonic": split.harmonic, "exact": split.exact, "coexact": split.coexact}
        document: dict[str, Any] = {"dim": n}
        for label, values in parts.items():
            document[label] = dict(zip(names, values.tolist()))
        document["sum_residual"] = split.sum_residual
        document["orthogonality_residual"] = split.orthogonality_residual
        document["harmonic_residual"] = split.harmonic_residual
        rows = [[name, *values] for name, values in
                zip(names, np.column_stack([cochain, *parts.values()]).tolist())]
        return JobResult(document, (["cell", "cochain", *parts], rows))

    # spectral-analysis

    def verify(self, job: JobConfig) -> JobResult:
        workspace = self.open_workspace(job)
        complex, w = workspace.complex, workspace.weights
        config = self._job_settings(job)
        tol = config.tol.VERIFY
        reports: list[VerificationReport]
        if job.theorem == "seq-spectrum":
            target: Union[IndependentModel, WeightFunction] = \
                workspace.model if workspace.model is not None else w
            reports = [
                verify_sequence_theorem(complex, target, n, tol, job.base_vertex,
                                        config.tol.DISTRIBUTION)
                for n in self._dims(job, complex, lowest=0)
            ]
        elif job.theorem == "simp-identity":
            reports = [verify_simplicial_theorem(complex, w, tol, workspace.vertex_probs)]
        elif job.theorem == "hodge":
            # Without --tol the decomposition is held to the rank tolerance
            reports = [verify_hodge(complex, w, self._dims(job, complex), job.samples, job.tol,
                                    job.seed)]
        else:
            reports = [verify_scaling(complex, w, self._dims(job, complex), tol=tol)]
        passed = all(r.passed for r in reports)
        level = logger.info if passed else logger.warning
        level(f"verify {job.theorem}: {'passed' if passed else 'FAILED'}")
        if reports:
            tol = reports[0].tol
        return JobResult({"theorem": job.theorem, "tol": tol, "passed": passed,
                          "reports": reports}, passed=passed)

    def embed(self, job: JobConfig) -> JobResult:
        workspace = self.open_workspace(job)
        n = job.dim
        bundle = laplacian(workspace.complex, workspace.weights, n)
        report = spectrum(bundle, self._cluster_tol(job))
        embedding = spectral_embed(bundle, report, job.components, job.scaling)
        names = workspace.cell_names(n)
        coordinates = embedding.coordinates.tolist()
        header = ["cell", *[f"c{k + 1}" for k in range(job.components)]]
        document = {
            "dim": n,
            "scaling": job.scaling,
            "skipped": embedding.skipped,
            "eigenvalues": embedding.eigenvalues,
            "coordinates": dict(zip(names, coordinates)),
        }
        return JobResult(document, (header, [[name, *row] for name, row in zip(names, coordinates)]))

    def run(self, job: JobConfig) -> JobResult:
        handler = getattr(self, job.command)
        logger.debug(f"Running {job.command}")
        return handler(job)


# Global service instance
hodge_service = HodgeService()
