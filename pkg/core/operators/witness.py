"""Certified finite-rank approximation of envelope-dominated operators.

If every row of the conjugated operator C satisfies ||row_m||_{s'} <= bound(m),
Hölder's inequality row by row gives

    ||(C - P_n C) p||_t <= (sum_{|m|>n} bound(m)^t)^{1/t} ||p||_s,

where P_n keeps the rows |m| <= n. The witness is the smallest n for which
the right-hand factor, taken from a closed-form tail sum, is <= epsilon.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np

from core.errors import EnvelopeNotSummable, EnvelopeViolated, HypothesisFailure, SeriesBudgetExceeded
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.operators.bounds import row_norms
from core.operators.isometry import check_pitt_pair, pitt_conjugate
from core.operators.types import DecayEnvelope, EntryFn, EnvelopeKind, FiniteSectionOperator, WitnessResult
from core.spaces.types import SpaceParams
from core.weights.types import IndexDomain

logger = logging.getLogger(__name__)


def envelope_tail(env: DecayEnvelope, n: int, t: float, domain: IndexDomain = IndexDomain.FULL_LINE) -> float:
    """Upper bound on sum_{|m|>n} bound(m)^t over ``domain``."""
    mult = 2 if domain is IndexDomain.FULL_LINE else 1
    if env.kind is EnvelopeKind.POWER:
        g = env.param * t
        if g <= 1:
            raise EnvelopeNotSummable(
                f"sum (1+|m|)^(-{g:g}) diverges: power envelope needs gamma*t > 1, got gamma={env.param:g}, t={t:g}"
            )
        # integral test: sum_{j>n} (1+j)^{-g} <= int_n^inf (1+x)^{-g} dx
        return mult / ((g - 1.0) * float(n + 1) ** (g - 1.0))
    if env.kind is EnvelopeKind.EXPONENTIAL:
        rate = env.param * t
        return mult * math.exp(-rate * (n + 1)) / -math.expm1(-rate)
    return math.fsum(
        value**t for m, value in env.table if abs(m) > n and domain.contains(m)
    )


def check_envelope(
    C: FiniteSectionOperator,
    env: DecayEnvelope,
) -> float:
    """Largest ratio ||row_m||_{s'} / bound(m) in the window; raises when a row exceeds its envelope."""
    norms = row_norms(C)
    slack = 1.0 + DEFAULT_TOLERANCES.comparison.constant_slack
    worst = 0.0
    for m, row_norm in zip(C.indices().tolist(), norms.tolist()):
        bound = env.bound(m)
        if row_norm > bound * slack + DEFAULT_TOLERANCES.comparison.abs_floor:
            raise EnvelopeViolated(f"row m={m} has s'-norm {row_norm:.12g} above its envelope {bound:.12g}")
        if bound > 0:
            worst = max(worst, row_norm / bound)
    return worst


def default_check_window(domain: IndexDomain) -> Tuple[int, int]:
    half_width = DEFAULT_TOLERANCES.sampling.probe_window
    return (0, half_width) if domain is IndexDomain.HALF_LINE else (-half_width, half_width)


def compactness_witness(
    entry_fn: EntryFn,
    env: DecayEnvelope,
    src: SpaceParams,
    tgt: SpaceParams,
    epsilon: float,
    check_window: Optional[Tuple[int, int]] = None,
    max_rank: Optional[int] = None,
) -> WitnessResult:
    """Smallest n with certified approximation error (sum_{|m|>n} bound(m)^t)^{1/t} <= epsilon.

    ``entry_fn(m, n)`` gives T[m, n] between h^{k,s}_w and h^{k,t}_w; the
    envelope is checked against the conjugated rows inside ``check_window``.
    """
    check_pitt_pair(src, tgt)
    if not epsilon > 0:
        raise HypothesisFailure(f"epsilon must be positive, got {epsilon}")
    t = tgt.s
    domain = src.domain
    max_rank = max_rank or DEFAULT_TOLERANCES.series.max_terms
    # summability first, so a divergent envelope is reported before any sampling
    envelope_tail(env, 0, t, domain)

    window = check_window or default_check_window(domain)
    C = pitt_conjugate(FiniteSectionOperator.from_entry_fn(entry_fn, window, src, tgt))
    max_ratio = check_envelope(C, env)

    evaluated: Dict[int, float] = {}

    def certified(n: int) -> float:
        if n not in evaluated:
            evaluated[n] = envelope_tail(env, n, t, domain) ** (1.0 / t)
        return evaluated[n]

    if certified(0) <= epsilon:
        n_eps = 0
    else:
        lo, hi = 0, 1
        while certified(hi) > epsilon:
            lo, hi = hi, hi * 2
            if hi > max_rank:
                raise SeriesBudgetExceeded(f"envelope tail stays above epsilon={epsilon:g} up to rank {max_rank}")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if certified(mid) <= epsilon:
                hi = mid
            else:
                lo = mid
        n_eps = hi

    trace = tuple(sorted(evaluated.items()))
    errors = np.array([bound for _, bound in trace])
    if np.any(np.diff(errors) > 0):
        raise HypothesisFailure("envelope tail bounds are not monotone in n")
    result = WitnessResult(
        n_eps=n_eps,
        certified_error=evaluated[n_eps],
        epsilon=float(epsilon),
        trace=trace,
        check_window=tuple(window),
        max_row_ratio=max_ratio,
        envelope=env.describe(),
    )
    logger.info(f"[PITT] witness n_eps={n_eps} certified_error={result.certified_error:.6g} (epsilon={epsilon:g})")
    return result
