from __future__ import annotations

from core.spaces.io import read_jsonl, to_jsonl, write_jsonl
from core.spaces.norms import (
    basis_norm,
    basis_vector,
    expansion_remainder,
    inner_product,
    log_basis_norms,
    norm,
    norm_power,
    tail,
    truncate,
    unweighted_norm,
)
from core.spaces.sampling import random_vector, sphere_sample, trial_rng
from core.spaces.types import SeqVector, SpaceParams

__all__ = [
    "SpaceParams",
    "SeqVector",
    "norm",
    "norm_power",
    "unweighted_norm",
    "inner_product",
    "basis_vector",
    "basis_norm",
    "log_basis_norms",
    "truncate",
    "tail",
    "expansion_remainder",
    "read_jsonl",
    "write_jsonl",
    "to_jsonl",
    "random_vector",
    "sphere_sample",
    "trial_rng",
]
