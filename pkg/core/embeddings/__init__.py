from __future__ import annotations

from core.embeddings.certificates import (
    certificate_tail_norm,
    certify_theorem1,
    certify_theorem1b,
    certify_theorem2,
    tail_rank_theorem1,
    tail_rank_theorem2,
)
from core.embeddings.constants import (
    Theorem2Reports,
    classify_order_pair,
    corollary_chains,
    summability_constant,
    theorem2_constant,
    theorem2_report,
    theorem2_second_constant,
)
from core.embeddings.probes import sharpness_probe
from core.embeddings.series import WeightSeries, duality_exponent, series_enclosure, weight_series_sum
from core.embeddings.types import (
    ChainLink,
    CompactnessCertificate,
    CorollaryChain,
    EmbeddingRelation,
    EmbeddingReport,
    SeriesSum,
    Theorem,
)

__all__ = [
    "ChainLink",
    "CompactnessCertificate",
    "CorollaryChain",
    "EmbeddingRelation",
    "EmbeddingReport",
    "SeriesSum",
    "Theorem",
    "Theorem2Reports",
    "WeightSeries",
    "certificate_tail_norm",
    "certify_theorem1",
    "certify_theorem1b",
    "certify_theorem2",
    "classify_order_pair",
    "corollary_chains",
    "duality_exponent",
    "series_enclosure",
    "sharpness_probe",
    "summability_constant",
    "tail_rank_theorem1",
    "tail_rank_theorem2",
    "theorem2_constant",
    "theorem2_report",
    "theorem2_second_constant",
    "weight_series_sum",
]
