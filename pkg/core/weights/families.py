"""Evaluation of weight families and the two-weight compatibility condition."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, PositiveFloat, ValidationError

from core.errors import (
    DomainMismatch,
    HypothesisFailure,
    IndexOutsideDomain,
    InfimumNotPositive,
    InvalidExponents,
    InvalidSequenceData,
)
from core.weights.types import IndexDomain, WeightFamily, WeightKind

logger = logging.getLogger(__name__)

# Relative slack under which two analytic exponents are treated as equal.
_ANALYTIC_MATCH_TOL = 1e-14


def _require_in_domain(w: WeightFamily, m: int) -> None:
    if not w.domain.contains(m):
        raise IndexOutsideDomain(f"index {m} lies outside the {w.domain.value} line")


def log_weight_at(w: WeightFamily, m: int) -> float:
    """Return ln(w_m) without forming w_m."""
    _require_in_domain(w, m)
    if w.kind is WeightKind.CONSTANT:
        return math.log(w.param)
    if w.kind is WeightKind.POLYNOMIAL:
        return w.param * math.log1p(abs(m))
    if w.kind is WeightKind.GIBBS:
        return w.param * m
    value = w.tabulated(m)
    if value is None:
        raise IndexOutsideDomain(f"no tabulated weight at index {m}")
    return math.log(value)


def weight_at(w: WeightFamily, m: int) -> float:
    """Return w_m (may overflow to inf for extreme Gibbs indices; norms use the log path)."""
    _require_in_domain(w, m)
    if w.kind is WeightKind.CONSTANT:
        return w.param
    if w.kind is WeightKind.TABLE:
        value = w.tabulated(m)
        if value is None:
            raise IndexOutsideDomain(f"no tabulated weight at index {m}")
        return value
    try:
        return math.exp(log_weight_at(w, m))
    except OverflowError:
        return math.inf


def log_weights(w: WeightFamily, indices: np.ndarray) -> np.ndarray:
    """Vectorised log_weight_at over an integer index array."""
    indices = np.asarray(indices, dtype=np.int64)
    if w.domain is IndexDomain.HALF_LINE and indices.size and indices.min() < 0:
        raise IndexOutsideDomain(f"index {int(indices.min())} lies outside the half line")
    if w.kind is WeightKind.CONSTANT:
        return np.full(indices.shape, math.log(w.param))
    if w.kind is WeightKind.POLYNOMIAL:
        return w.param * np.log1p(np.abs(indices).astype(float))
    if w.kind is WeightKind.GIBBS:
        return w.param * indices.astype(float)
    return np.array([log_weight_at(w, int(m)) for m in indices], dtype=float)


def weight_infimum(w: WeightFamily) -> float:
    """Exact infimum of the family over its domain."""
    if w.kind is WeightKind.CONSTANT:
        return w.param
    if w.kind is WeightKind.POLYNOMIAL:
        if w.param >= 0:
            return 1.0
        raise InfimumNotPositive(f"(1+|m|)^{w.param} tends to 0, so inf w = 0")
    if w.kind is WeightKind.GIBBS:
        return 1.0
    assert w.lower_bound is not None
    return w.lower_bound


@dataclass(frozen=True)
class RatioBounds:
    """Bounds c1 <= w_m^{t/s} / w_hat_m <= c2.

    ``analytic`` is True when the bounds hold for every index of the
    domain; otherwise they are the extremes over ``window`` only.
    """

    c1: float
    c2: float
    analytic: bool
    window: Tuple[int, int]

    @property
    def rigorous(self) -> bool:
        return self.analytic

    def __iter__(self):
        yield self.c1
        yield self.c2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "analytic": self.analytic,
            "window": list(self.window),
        }


def _analytic_ratio(w: WeightFamily, w_hat: WeightFamily, q: float) -> Union[Tuple[float, float], None]:
    if w.kind is WeightKind.CONSTANT and w_hat.kind is WeightKind.CONSTANT:
        value = math.exp(q * math.log(w.param) - math.log(w_hat.param))
        return value, value
    if w.kind is w_hat.kind and w.kind in (WeightKind.GIBBS, WeightKind.POLYNOMIAL):
        exponent = q * w.param - w_hat.param
        scale = max(abs(q * w.param), abs(w_hat.param), 1.0)
        if abs(exponent) <= _ANALYTIC_MATCH_TOL * scale:
            return 1.0, 1.0
    return None


def ratio_condition_check(
    w: WeightFamily,
    w_hat: WeightFamily,
    s: float,
    t: float,
    window: Tuple[int, int],
) -> RatioBounds:
    """Bounds for the two-weight condition c1 <= w_m^{t/s}/w_hat_m <= c2."""
    if t < 1 or s <= t:
        raise InvalidExponents(f"two-weight condition needs s > t >= 1, got s={s}, t={t}")
    if w.domain is not w_hat.domain:
        raise DomainMismatch(f"weights live on different domains: {w.domain.value} vs {w_hat.domain.value}")
    lo, hi = int(window[0]), int(window[1])
    if w.domain is IndexDomain.HALF_LINE:
        lo = max(lo, 0)
    if lo > hi:
        raise HypothesisFailure(f"empty index window [{window[0]}, {window[1]}]")

    q = t / s
    analytic = _analytic_ratio(w, w_hat, q)
    if analytic is not None:
        return RatioBounds(c1=analytic[0], c2=analytic[1], analytic=True, window=(lo, hi))

    indices = np.arange(lo, hi + 1, dtype=np.int64)
    log_ratio = q * log_weights(w, indices) - log_weights(w_hat, indices)
    c1, c2 = float(np.exp(log_ratio.min())), float(np.exp(log_ratio.max()))
    logger.info(f"[WEIGHTS] window-empirical ratio bounds on [{lo}, {hi}]: c1={c1:.6g}, c2={c2:.6g}")
    return RatioBounds(c1=c1, c2=c2, analytic=False, window=(lo, hi))


class WeightTableFile(BaseModel):
    """On-disk weight table: index strings mapped to positive values plus lower_bound."""

    lower_bound: PositiveFloat
    values: Dict[int, PositiveFloat] = Field(default_factory=dict)


def load_weight_table(
    source: Union[str, Path, Mapping[str, Any]],
    domain: IndexDomain = IndexDomain.FULL_LINE,
) -> WeightFamily:
    """Load a Table family from a JSON file path or an already parsed mapping."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as f:
            raw = json.load(f)
    else:
        raw = dict(source)
    if not isinstance(raw, dict) or "lower_bound" not in raw:
        raise InvalidSequenceData("weight table must be a JSON object with a 'lower_bound' field")
    values = {key: value for key, value in raw.items() if key != "lower_bound"}
    try:
        parsed = WeightTableFile(lower_bound=raw["lower_bound"], values=values)
    except ValidationError as exc:
        raise InvalidSequenceData(f"invalid weight table: {exc}") from exc
    return WeightFamily.from_table(parsed.values, lower_bound=parsed.lower_bound, domain=domain)
