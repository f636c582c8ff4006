from __future__ import annotations

from core.operators.bounds import diagonal_norm, holder_conjugate, operator_norm_lower, operator_norm_upper, row_norms
from core.operators.io import operator_from_json, operator_to_dict, operator_to_json
from core.operators.isometry import (
    apply,
    embedding_as_diagonal,
    isometry_apply,
    isometry_invert,
    pitt_conjugate,
    pitt_deconjugate,
)
from core.operators.types import (
    DecayEnvelope,
    EnvelopeKind,
    FiniteSectionOperator,
    WitnessResult,
    is_unweighted,
    unweighted_space,
)
from core.operators.witness import compactness_witness, envelope_tail

__all__ = [
    "DecayEnvelope",
    "EnvelopeKind",
    "FiniteSectionOperator",
    "WitnessResult",
    "apply",
    "compactness_witness",
    "diagonal_norm",
    "embedding_as_diagonal",
    "envelope_tail",
    "holder_conjugate",
    "is_unweighted",
    "isometry_apply",
    "isometry_invert",
    "operator_from_json",
    "operator_to_dict",
    "operator_to_json",
    "operator_norm_lower",
    "operator_norm_upper",
    "pitt_conjugate",
    "pitt_deconjugate",
    "row_norms",
    "unweighted_space",
]
