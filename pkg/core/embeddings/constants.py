"""Embedding relations and constants along the h^{k,s}_w scale."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from core.embeddings.series import duality_exponent, series_enclosure
from core.embeddings.types import ChainLink, CorollaryChain, EmbeddingRelation, EmbeddingReport
from core.errors import HypothesisFailure, InfimumNotPositive, InvalidExponents, NotStrictlySmoother
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.weights.families import RatioBounds, ratio_condition_check, weight_infimum
from core.weights.types import IndexDomain, WeightFamily

logger = logging.getLogger(__name__)

L_SPACE = "l^s_w"


def _h(k: float) -> str:
    return L_SPACE if k == 0 else f"h^({k:g},s)_w"


def corollary_chains(k: float, k_prime: float) -> List[CorollaryChain]:
    """Every interlacing chain of l^s_w that applies to k < k'."""
    if not k < k_prime:
        raise NotStrictlySmoother(f"interlacing chains need k < k', got k={k}, k'={k_prime}")
    compact, continuous = EmbeddingRelation.COMPACT, EmbeddingRelation.CONTINUOUS
    chains: List[CorollaryChain] = []
    if k_prime <= 0:
        chains.append(
            CorollaryChain(
                case="a",
                links=(
                    ChainLink(L_SPACE, _h(k_prime), continuous),
                    ChainLink(_h(k_prime), _h(k), compact),
                ),
            )
        )
    if k <= 0 < k_prime:
        chains.append(
            CorollaryChain(
                case="b",
                links=(
                    ChainLink(_h(k_prime), L_SPACE, compact),
                    ChainLink(L_SPACE, _h(k), continuous),
                ),
            )
        )
    if 0 <= k:
        chains.append(
            CorollaryChain(
                case="c",
                links=(
                    ChainLink(_h(k_prime), _h(k), compact),
                    ChainLink(_h(k), L_SPACE, continuous),
                ),
            )
        )
    return chains


def classify_order_pair(k_src: float, k_tgt: float) -> EmbeddingReport:
    """Relation of h^{k_src,s}_w to h^{k_tgt,s}_w (same s and w)."""
    if k_tgt < k_src:
        notes = ["strict order gap: compact with constant 1"]
        notes.extend(f"interlacing chain ({chain.case})" for chain in corollary_chains(k_tgt, k_src))
        return EmbeddingReport(EmbeddingRelation.COMPACT, constant=1.0, hypothesis_notes=tuple(notes))
    if k_tgt == k_src:
        notes = ["equal orders: identity map"]
        if k_src == 0:
            notes.append("both spaces are l^s_w")
        return EmbeddingReport(EmbeddingRelation.CONTINUOUS, constant=1.0, hypothesis_notes=tuple(notes))
    return EmbeddingReport(
        EmbeddingRelation.NO_GUARANTEE,
        constant=None,
        hypothesis_notes=(
            "k_tgt > k_src: ||e_m||_tgt / ||e_m||_src = (1+|m|^s)^((k_tgt-k_src)/s) is unbounded",
        ),
    )


def summability_constant(k: float, s: float, t: float, w: WeightFamily) -> float:
    """c_{s,t} = (inf w)^{1/s - 1/t} with ||p||_{k,s,w} <= c_{s,t} ||p||_{k,t,w}."""
    if k < 0:
        raise HypothesisFailure(f"summability embedding needs k >= 0, got k={k}")
    if t < 1 or s < t:
        raise HypothesisFailure(f"summability embedding needs s >= t >= 1, got s={s}, t={t}")
    try:
        infimum = weight_infimum(w)
    except InfimumNotPositive as exc:
        raise HypothesisFailure(f"inf w > 0 required: {exc}") from exc
    if s == t:
        return 1.0
    return math.pow(infimum, 1.0 / s - 1.0 / t)


def theorem2_constant(
    k: float,
    s: float,
    t: float,
    c1: float,
    domain: IndexDomain = IndexDomain.FULL_LINE,
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
    max_terms: Optional[int] = None,
) -> float:
    """c_{k,s,t} = c1^{-1/t} S^{1/r} with ||p||_{t,w_hat} <= c_{k,s,t} ||p||_{k,s,w}.

    S is taken at the upper end of its certified enclosure so the constant
    stays a valid bound.
    """
    if not c1 > 0:
        raise HypothesisFailure(f"c1 must be positive, got {c1}")
    r = duality_exponent(s, t)
    total = series_enclosure(k, s, t, domain, tol, max_terms)
    return math.exp(-math.log(c1) / t + math.log(total.upper) / r)


def theorem2_second_constant(s: float, t: float, c2: float) -> float:
    """c_{s,t} = c2^{1/t} with ||p||_{s,w} <= c_{s,t} ||p||_{t,w_hat}."""
    if t < 1 or s <= t:
        raise InvalidExponents(f"need s > t >= 1, got s={s}, t={t}")
    if not c2 > 0 or math.isinf(c2):
        raise HypothesisFailure(f"c2 must be positive and finite, got {c2}")
    return math.pow(c2, 1.0 / t)


@dataclass(frozen=True)
class Theorem2Reports:
    """Both links of h^{k,s}_w -> l^t_{w_hat} -> l^s_w."""

    ratio: RatioBounds
    first: EmbeddingReport
    second: EmbeddingReport

    def labels(self) -> Tuple[str, str]:
        return ("compact", "continuous")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ratio": self.ratio.to_dict(),
            "first": self.first.to_dict(),
            "second": self.second.to_dict(),
            "chain": list(self.labels()),
        }


def theorem2_report(
    w: WeightFamily,
    w_hat: WeightFamily,
    k: float,
    s: float,
    t: float,
    window: Tuple[int, int] = (-DEFAULT_TOLERANCES.sampling.probe_window, DEFAULT_TOLERANCES.sampling.probe_window),
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
    max_terms: Optional[int] = None,
) -> Theorem2Reports:
    ratio = ratio_condition_check(w, w_hat, s, t, window)
    rigorous = ratio.analytic
    notes: Tuple[str, ...] = (
        f"two-weight condition: c1={ratio.c1:g}, c2={ratio.c2:g} ({'analytic' if rigorous else 'window-empirical'})",
        f"k={k:g} > (s-t)/(st)={(s - t) / (s * t):g}",
    )
    if not rigorous:
        notes += ("heuristic: ratio bounds only hold on the sampled window",)
        logger.warning("[THEOREM2] constants downgraded to heuristic: ratio bounds are window-empirical")
    first = EmbeddingReport(
        EmbeddingRelation.COMPACT,
        constant=theorem2_constant(k, s, t, ratio.c1, w.domain, tol, max_terms),
        hypothesis_notes=notes,
        rigorous=rigorous,
    )
    second = EmbeddingReport(
        EmbeddingRelation.CONTINUOUS,
        constant=theorem2_second_constant(s, t, ratio.c2),
        hypothesis_notes=notes[:1],
        rigorous=rigorous,
    )
    return Theorem2Reports(ratio=ratio, first=first, second=second)
