"""Fit a distribution on the full sequence complex from observed sequences."""

from collections import Counter
from typing import Iterable, Optional

from complexes.cells import Cell
from complexes.index import SequenceComplex, build_full_sequence_complex
from core.errors import InputError
from core.logger import get_logger
from weights.distribution import COMPONENT, Distribution

logger = get_logger("empirical")


def tokenize_corpus(lines: Iterable[str]) -> list[list[str]]:
    """Split newline-delimited sequences into ``.``-separated tokens; blank lines are skipped."""
    result = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        result.append([token for token in line.split(".")])
    return result


def build_vocabulary(sequences: Iterable[list[str]]) -> list[str]:
    """Tokens in order of first appearance."""
    seen: dict[str, int] = {}
    for tokens in sequences:
        for token in tokens:
            if not token:
                raise InputError("empty token in corpus sequence", COMPONENT)
            seen.setdefault(token, len(seen))
    return list(seen)


def fit_empirical(lines: Iterable[str], max_dim: int, smoothing: float = 0.0,
                  vocabulary: Optional[list[str]] = None,
                  cell_budget: Optional[int] = None) -> tuple[list[str], SequenceComplex, Distribution]:
    """Relative frequencies of observed sequences, with additive smoothing on every stored cell.

    Sequences longer than the complex's top dimension are dropped.
    Returns the vocabulary, the complex it spans and the fitted distribution.
    """
    if smoothing < 0:
        raise InputError(f"smoothing must be nonnegative, got {smoothing}", COMPONENT)
    sequences = tokenize_corpus(lines)
    names = list(vocabulary) if vocabulary is not None else build_vocabulary(sequences)
    if not names:
        raise InputError("corpus has no tokens", COMPONENT)
    ids = {name: i for i, name in enumerate(names)}

    complex = build_full_sequence_complex(len(names), max_dim, cell_budget=cell_budget)
    counts: Counter[Cell] = Counter()
    dropped = 0
    for tokens in sequences:
        if len(tokens) - 1 > complex.top_dim:
            dropped += 1
            continue
        try:
            counts[Cell.sequence(ids[t] for t in tokens)] += 1
        except KeyError as e:
            raise InputError(f"token {e.args[0]!r} is not in the vocabulary", COMPONENT) from e
    if dropped:
        logger.warning(f"Dropped {dropped} sequences longer than {complex.top_dim + 1} tokens")

    total_cells = sum(complex.counts().values())
    total = sum(counts.values()) + smoothing * total_cells
    if not total > 0:
        raise InputError("no usable sequences in the corpus", COMPONENT)

    support: dict[Cell, float] = {}
    if smoothing > 0:
        for n in complex.dims():
            for cell in complex.cells(n):
                support[cell] = (counts.get(cell, 0) + smoothing) / total
    else:
        support = {cell: count / total for cell, count in counts.items()}
    logger.info(f"Fitted {len(support)} cells from {sum(counts.values())} sequences, "
                f"vocabulary size {len(names)}")
    return names, complex, Distribution(complex, support)
