from __future__ import annotations

from core.weights.families import (
    RatioBounds,
    load_weight_table,
    log_weight_at,
    log_weights,
    ratio_condition_check,
    weight_at,
    weight_infimum,
)
from core.weights.types import IndexDomain, WeightFamily, WeightKind

__all__ = [
    "IndexDomain",
    "WeightFamily",
    "WeightKind",
    "RatioBounds",
    "weight_at",
    "log_weight_at",
    "log_weights",
    "weight_infimum",
    "ratio_condition_check",
    "load_weight_table",
]
