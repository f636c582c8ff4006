"""Deterministic JSON and CSV rendering of command reports."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd


def make_serializable(obj: Any) -> Any:
    """Convert a report tree to plain JSON types, keeping key order."""
    if hasattr(obj, "to_dict"):
        return make_serializable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): make_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_serializable(item) for item in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.generic):
        return make_serializable(obj.item())
    if isinstance(obj, complex):
        return [make_serializable(obj.real), make_serializable(obj.imag)]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, (int, str, bool, type(None))):
        return obj
    if isinstance(obj, Path):
        return str(obj)
    return str(obj)


@dataclass
class CommandReport:
    """One command's result: the JSON document and, for tabular commands, CSV rows."""

    document: Dict[str, Any]
    rows: Optional[List[Dict[str, Any]]] = None
    exit_code: int = 0


def render_json(document: Dict[str, Any], indent: Optional[int] = 2) -> str:
    return json.dumps(make_serializable(document), indent=indent, allow_nan=False) + "\n"


def render_csv(rows: List[Dict[str, Any]]) -> str:
    frame = pd.DataFrame([make_serializable(row) for row in rows])
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def error_document(command: str, exc: Exception) -> Dict[str, Any]:
    return {
        "command": command,
        "status": "error",
        "error": type(exc).__name__,
        "message": str(exc),
    }
