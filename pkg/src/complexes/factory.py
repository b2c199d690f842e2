"""Complex factory for selecting the cell-complex family from a description."""

from typing import Optional

from complexes.index import ComplexIndex, build_full_sequence_complex, build_simplicial_complex
from core.job_config import ComplexSpec
from core.logger import get_logger

logger = get_logger("complex_factory")


def get_complex(spec: ComplexSpec, augmented: Optional[bool] = None,
                cell_budget: Optional[int] = None) -> ComplexIndex:
    """
    Build the complex a description names.

    Args:
        spec: Parsed complex description
        augmented: Overrides ``spec.augmented`` when given
        cell_budget: Per-dimension cell limit; the configured budget when None

    Returns:
        SequenceComplex or SimplicialComplex
    """
    augmented = spec.augmented if augmented is None else augmented
    vocabulary = spec.vocabulary
    logger.info(f"Building {spec.kind} complex on {len(vocabulary)} vertices")

    if spec.kind == "sequence":
        logger.debug(f"Full sequence complex up to dim {spec.max_dim + 1}")
        return build_full_sequence_complex(len(vocabulary), spec.max_dim, augmented, cell_budget)

    if spec.facets is None:
        facets = [list(range(len(vocabulary)))]
        logger.debug("No facets given, using the full simplex")
    else:
        facets = [[vocabulary.id_of(v) for v in facet] for facet in spec.facets]
    return build_simplicial_complex(len(vocabulary), facets, spec.max_dim, augmented, cell_budget)
