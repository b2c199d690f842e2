"""Job and input-file models for the command-line front end."""

import json
import re
from functools import cached_property
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from complexes.cells import Cell, CellKind, cell_name
from core.errors import InputError
from core.logger import get_logger
from core.settings import settings

logger = get_logger("job_config")

COMPONENT = "cli"

_NAME_PATTERN = re.compile(r"^[^.,{}()\s]+$")
_DIMS_PATTERN = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")


class Vocabulary(BaseModel):
    """External vertex names mapped to dense ids in input order."""

    names: list[str]

    @field_validator("names")
    @classmethod
    def validate_names(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("at least one vertex is required")
        if len(set(v)) != len(v):
            raise ValueError("vertex names must be unique")
        for name in v:
            if not _NAME_PATTERN.match(name):
                raise ValueError(
                    f"vertex name {name!r} may not contain '.', ',', braces, parentheses or spaces"
                )
        return v

    @classmethod
    def from_vertices(cls, vertices: Union[int, list]) -> "Vocabulary":
        if isinstance(vertices, int):
            return cls(names=[str(i) for i in range(vertices)])
        return cls(names=[str(v) for v in vertices])

    def __len__(self) -> int:
        return len(self.names)

    def id_of(self, name) -> int:
        try:
            return self._ids[str(name)]
        except KeyError:
            raise InputError(f"unknown vertex {name!r}", COMPONENT) from None

    @cached_property
    def _ids(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def name_of(self, cell: Cell) -> str:
        return cell_name(cell, self.names)

    def parse_cell(self, text: str, kind: CellKind) -> Cell:
        """Read ``a.b.a``, ``{a,b}`` or ``()``; bare names are 0-cells of either kind."""
        text = text.strip()
        if text in ("()", ""):
            return Cell.empty()
        ids = self._ids
        if kind is CellKind.SIMPLEX:
            inner = text[1:-1] if text.startswith("{") and text.endswith("}") else text
            tokens = [t.strip() for t in inner.split(",")]
        else:
            tokens = text.split(".")
        try:
            vertices = [ids[t] for t in tokens]
        except KeyError as e:
            raise InputError(f"cell {text!r} names unknown vertex {e.args[0]!r}", COMPONENT) from None
        return Cell.simplex(vertices) if kind is CellKind.SIMPLEX else Cell.sequence(vertices)


class ComplexSpec(BaseModel):
    """A complex description; extra keys such as a cell listing are ignored."""

    model_config = ConfigDict(extra="ignore")

    kind: Literal["sequence", "simplicial"]
    vertices: Union[int, list[Union[str, int]]]
    max_dim: Optional[int] = None
    facets: Optional[list[list[Union[str, int]]]] = None
    augmented: bool = True

    @field_validator("vertices")
    @classmethod
    def validate_vertices(cls, v):
        if isinstance(v, int) and v < 1:
            raise ValueError("vertex count must be positive")
        return v

    @model_validator(mode="after")
    def validate_shape(self) -> "ComplexSpec":
        if self.kind == "sequence":
            if self.max_dim is None or self.max_dim < -1:
                raise ValueError("a sequence complex needs max_dim >= -1")
            if self.facets is not None:
                raise ValueError("facets only apply to simplicial complexes")
        elif self.max_dim is not None and self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")
        return self

    @property
    def vocabulary(self) -> Vocabulary:
        return Vocabulary.from_vertices(self.vertices)

    @property
    def cell_kind(self) -> CellKind:
        return CellKind.SEQUENCE if self.kind == "sequence" else CellKind.SIMPLEX


WeightModel = Literal["independent", "conditional", "moment", "empty-normalized", "raw"]


class WeightsSpec(BaseModel):
    """A weight description over named cells.

    ``independent`` reads ``vertex_weights``; ``conditional``, ``moment`` and
    ``empty-normalized`` read ``probabilities`` (a distribution on cells) or,
    for the last two, ``vertex_probabilities`` of a product Bernoulli model;
    ``raw`` reads ``weights``.
    """

    model_config = ConfigDict(extra="ignore")

    model: WeightModel
    vertex_weights: Optional[Union[dict[str, float], list[float]]] = None
    probabilities: Optional[dict[str, float]] = None
    vertex_probabilities: Optional[Union[dict[str, float], list[float]]] = None
    weights: Optional[dict[str, float]] = None

    @model_validator(mode="after")
    def validate_payload(self) -> "WeightsSpec":
        if self.model == "independent" and self.vertex_weights is None:
            raise ValueError("the independent model needs vertex_weights")
        if self.model == "conditional" and self.probabilities is None:
            raise ValueError("the conditional model needs probabilities")
        if self.model in ("moment", "empty-normalized") and \
                self.probabilities is None and self.vertex_probabilities is None:
            raise ValueError(f"the {self.model} model needs probabilities or vertex_probabilities")
        if self.model == "raw" and self.weights is None:
            raise ValueError("the raw model needs weights")
        return self


def vertex_vector(values: Union[dict[str, float], list[float]], vocabulary: Vocabulary) -> list[float]:
    """Order per-vertex numbers by vertex id; a mapping must name every vertex."""
    if isinstance(values, list):
        if len(values) != len(vocabulary):
            raise InputError(f"expected {len(vocabulary)} vertex values, got {len(values)}",
                             COMPONENT)
        return [float(x) for x in values]
    missing = [name for name in vocabulary.names if name not in values]
    if missing:
        raise InputError(f"no value given for vertex {missing[0]!r}", COMPONENT)
    for name in values:
        vocabulary.id_of(name)
    return [float(values[name]) for name in vocabulary.names]


def parse_dims(text: str) -> list[int]:
    """``2`` -> [2], ``0..2`` -> [0, 1, 2], ``0,2`` -> [0, 2]."""
    dims: list[int] = []
    for part in str(text).split(","):
        match = _DIMS_PATTERN.match(part.strip())
        if not match:
            raise InputError(f"cannot read dimension range {text!r}", COMPONENT)
        low = int(match.group(1))
        high = int(match.group(2)) if match.group(2) is not None else low
        if high < low:
            raise InputError(f"empty dimension range {part!r}", COMPONENT)
        dims.extend(range(low, high + 1))
    return sorted(set(dims))


def resolve_path(path: Union[str, Path]) -> Path:
    """Use ``path`` as given, falling back to the configured example directory."""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    fallback = Path(settings.CONFIG_DIR) / candidate
    if fallback.exists():
        logger.debug(f"Resolved {path} to {fallback}")
        return fallback
    raise InputError(f"file not found: {path}", COMPONENT)


def read_json(path: Union[str, Path]) -> dict:
    resolved = resolve_path(path)
    try:
        with open(resolved, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON in {resolved}: {e}", COMPONENT) from e
    if not isinstance(data, dict):
        raise InputError(f"{resolved} must hold a JSON object", COMPONENT)
    return data


def _parse(model: type[BaseModel], data: dict, source: str):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise InputError(f"{source}: {where}: {first['msg']}", COMPONENT) from e


def load_complex_spec(path: Union[str, Path]) -> ComplexSpec:
    """Read a complex description; an ``ingest`` output is accepted through its ``complex`` key."""
    data = read_json(path)
    if "complex" in data and isinstance(data["complex"], dict):
        data = data["complex"]
    spec = _parse(ComplexSpec, data, str(path))
    logger.debug(f"Loaded {spec.kind} complex description from {path}")
    return spec


def load_weights_spec(path: Union[str, Path]) -> WeightsSpec:
    spec = _parse(WeightsSpec, read_json(path), str(path))
    logger.debug(f"Loaded {spec.model} weights description from {path}")
    return spec


def load_cochain(path: Union[str, Path]) -> dict[str, float]:
    data = read_json(path)
    try:
        return {str(k): float(v) for k, v in data.items()}
    except (TypeError, ValueError) as e:
        raise InputError(f"cochain values in {path} must be numbers", COMPONENT) from e


Format = Literal["csv", "json"]


class JobConfig(BaseModel):
    """One CLI invocation after argument parsing."""

    command: Literal["build", "laplacian", "spectrum", "decompose", "verify", "embed", "ingest"]
    complex_path: Optional[str] = None
    weights_path: Optional[str] = None
    cochain_path: Optional[str] = None
    corpus_path: Optional[str] = None
    dims: Optional[list[int]] = None
    tol: Optional[float] = Field(default=None, gt=0)
    cluster_tol: Optional[float] = Field(default=None, gt=0)
    cell_budget: Optional[int] = Field(default=None, gt=0)
    augmented: bool = True
    out: Optional[str] = None
    format: Format = "csv"
    theorem: Optional[Literal["seq-spectrum", "simp-identity", "hodge", "scaling"]] = None
    components: int = Field(default=2, ge=0)
    scaling: Literal["none", "inverse-sqrt-eigenvalue"] = "none"
    part: Literal["full", "up", "down"] = "full"
    base_vertex: Optional[int] = Field(default=None, ge=0)
    max_dim: Optional[int] = Field(default=None, ge=0)
    smoothing: float = Field(default=0.0, ge=0)
    samples: int = Field(default=100, ge=1)
    seed: int = 0

    @field_validator("dims", mode="before")
    @classmethod
    def validate_dims(cls, v):
        if v is None or isinstance(v, list):
            return v
        return parse_dims(v)

    @field_validator("complex_path", "weights_path", "cochain_path", "corpus_path")
    @classmethod
    def validate_exists(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        return str(resolve_path(v))

    @model_validator(mode="after")
    def validate_inputs(self) -> "JobConfig":
        needs_complex = self.command != "ingest"
        needs_weights = self.command not in ("build", "ingest")
        if needs_complex and self.complex_path is None:
            raise ValueError(f"{self.command} needs --complex")
        if needs_weights and self.weights_path is None:
            raise ValueError(f"{self.command} needs --weights")
        if self.command == "ingest" and (self.corpus_path is None or self.max_dim is None):
            raise ValueError("ingest needs a corpus file and --max-dim")
        if self.command == "verify" and self.theorem is None:
            raise ValueError("verify needs --theorem")
        if self.command in ("laplacian", "decompose", "embed") and \
                (self.dims is None or len(self.dims) != 1):
            raise ValueError(f"{self.command} needs exactly one dimension (--dim)")
        if self.command == "decompose" and self.cochain_path is None:
            raise ValueError("decompose needs --cochain")
        return self

    @property
    def dim(self) -> int:
        return self.dims[0]

    @classmethod
    def from_arguments(cls, values: dict) -> "JobConfig":
        return _parse(cls, values, "arguments")
