"""Deterministic CSV and JSON writers."""

import csv
import io
import json
import math
import sys
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from core.logger import get_logger
from core.settings import settings

logger = get_logger("export")


def format_float(value: float, digits: Optional[int] = None) -> str:
    digits = settings.FLOAT_DIGITS if digits is None else digits
    value = float(value)
    if not math.isfinite(value):
        return json.dumps(value)
    if value == 0:
        # No negative zeros in output
        return "0"
    return format(value, f".{digits}g")


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays, enums and pydantic models to JSON-ready values."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseModel):
        return _plain(value.model_dump(mode="python"))
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (int, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in value):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in value) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(value).__name__} as JSON")


def dumps_json(document: Any, indent: int = 2) -> str:
    """JSON text with every float printed to FLOAT_DIGITS significant digits."""
    return _encode(_plain(document), indent, 0) + "\n"


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, (float, np.floating)) else v
                         for v in row])
    return buffer.getvalue()


@contextmanager
def _target(out: Optional[str]):
    if out is None:
        yield sys.stdout
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        yield f


def write_text(text: str, out: Optional[str] = None) -> None:
    with _target(out) as f:
        f.write(text)
    if out is not None:
        logger.info(f"Wrote {out}")


def write_json(document: Any, out: Optional[str] = None) -> None:
    write_text(dumps_json(document), out)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], out: Optional[str] = None) -> None:
    write_text(dumps_csv(header, rows), out)
