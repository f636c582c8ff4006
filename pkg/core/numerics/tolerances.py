from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ComparisonTolerances:
    rel_tol: float = 1e-12
    constant_slack: float = 1e-10
    abs_floor: float = 1e-300


@dataclass(frozen=True)
class SeriesTolerances:
    default_tol: float = 1e-8
    max_terms: int = 50_000_000
    min_terms: int = 2


@dataclass(frozen=True)
class SamplingDefaults:
    seed: int = 0
    trials: int = 1000
    probe_window: int = 50
    support_size: int = 12


@dataclass(frozen=True)
class NumericTolerances:
    comparison: ComparisonTolerances = ComparisonTolerances()
    series: SeriesTolerances = SeriesTolerances()
    sampling: SamplingDefaults = SamplingDefaults()


DEFAULT_TOLERANCES = NumericTolerances()
