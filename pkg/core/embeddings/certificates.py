"""Tail ranks and compactness certificates extracted from the compactness proofs."""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np

from core.embeddings.constants import summability_constant, theorem2_constant
from core.embeddings.series import WeightSeries, duality_exponent, series_enclosure, symmetric_tail_upper
from core.embeddings.types import CompactnessCertificate, Theorem
from core.errors import HypothesisFailure, NotStrictlySmoother, SeriesBudgetExceeded
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.spaces.norms import norm, tail
from core.spaces.types import SeqVector, SpaceParams
from core.weights.families import ratio_condition_check
from core.weights.types import IndexDomain, WeightFamily

logger = logging.getLogger(__name__)


def _require_radii(epsilon: float, kappa: float) -> None:
    if not (epsilon > 0 and kappa > 0):
        raise HypothesisFailure(f"epsilon and kappa must be positive, got {epsilon}, {kappa}")


def theorem1_tail_holds(m: int, order_gap: float, s: float, epsilon: float, kappa: float) -> bool:
    """(1+m^s)^{-(k'-k)} <= (epsilon/(2 kappa))^s."""
    lhs = np.power(1.0 + np.power(float(m), s), -order_gap)
    return bool(lhs <= np.power(epsilon / (2.0 * kappa), s))


def tail_rank_theorem1(k: float, k_prime: float, s: float, epsilon: float, kappa: float) -> int:
    """Minimal m* >= 0 with (1+m*^s)^{-(k'-k)} <= (epsilon/(2 kappa))^s."""
    if not k_prime > k:
        raise NotStrictlySmoother(f"compactness needs k' > k, got k={k}, k'={k_prime}")
    _require_radii(epsilon, kappa)
    gap = k_prime - k
    if theorem1_tail_holds(0, gap, s, epsilon, kappa):
        return 0
    # 1 + m^s >= (2 kappa / epsilon)^{s/gap}, solved in log domain then snapped.
    log_target = (s / gap) * math.log(2.0 * kappa / epsilon)
    log_base = log_target if log_target > 30 else math.log(math.expm1(log_target))
    try:
        m = max(int(math.ceil(math.exp(log_base / s))), 1)
    except OverflowError as exc:
        raise HypothesisFailure(f"tail rank for epsilon={epsilon}, kappa={kappa} is not representable") from exc
    while m > 0 and theorem1_tail_holds(m - 1, gap, s, epsilon, kappa):
        m -= 1
    while not theorem1_tail_holds(m, gap, s, epsilon, kappa):
        m += 1
    return m


def certify_theorem1(
    k: float,
    k_prime: float,
    s: float,
    w: WeightFamily,
    epsilon: float,
    kappa: float,
) -> CompactnessCertificate:
    """Certificate for h^{k',s}_w compactly embedded in h^{k,s}_w."""
    if s < 1:
        raise HypothesisFailure(f"s must be >= 1, got {s}")
    m_star = tail_rank_theorem1(k, k_prime, s, epsilon, kappa)
    cert = CompactnessCertificate.issue(Theorem.T1A, m_star, epsilon, kappa, w.domain, constant=1.0)
    logger.info(f"[CERT] T1a k={k} k'={k_prime} s={s}: m*={m_star}, dim={cert.subspace_dim}")
    return cert


def certify_theorem1b(
    k: float,
    k_prime: float,
    s: float,
    t: float,
    w: WeightFamily,
    epsilon: float,
    kappa: float,
) -> CompactnessCertificate:
    """Certificate for h^{k',t}_w compactly embedded in h^{k,s}_w (0 <= k < k', s >= t).

    The tail bound at summability t is tightened by c_{s,t} so that the
    continuous step h^{k,t}_w -> h^{k,s}_w keeps it below epsilon/2.
    """
    if not 0 <= k < k_prime:
        raise HypothesisFailure(f"the mixed-summability certificate needs 0 <= k < k', got k={k}, k'={k_prime}")
    c_st = summability_constant(k, s, t, w)
    m_star = tail_rank_theorem1(k, k_prime, t, epsilon / c_st, kappa)
    cert = CompactnessCertificate.issue(Theorem.T1B, m_star, epsilon, kappa, w.domain, constant=c_st)
    logger.info(f"[CERT] T1b k={k} k'={k_prime} s={s} t={t}: c_st={c_st:.6g}, m*={m_star}")
    return cert


def tail_rank_theorem2(
    k: float,
    s: float,
    t: float,
    c1: float,
    epsilon: float,
    kappa: float,
    domain: IndexDomain = IndexDomain.FULL_LINE,
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
    max_terms: Optional[int] = None,
) -> int:
    """Minimal m* whose certified tail sum_{|m|>=m*} (1+|m|^s)^{-kr/s} is <= (eps c1^{1/t}/(2 kappa))^r."""
    _require_radii(epsilon, kappa)
    if not c1 > 0:
        raise HypothesisFailure(f"c1 must be positive, got {c1}")
    r = duality_exponent(s, t)
    series = WeightSeries(k, s, t)
    budget = DEFAULT_TOLERANCES.series.max_terms if max_terms is None else max_terms
    total = series_enclosure(k, s, t, domain, tol, budget)
    threshold = math.exp(r * (math.log(epsilon) + math.log(c1) / t - math.log(2.0 * kappa)))

    def bound(m: int) -> float:
        return symmetric_tail_upper(series, total, m)

    for m in range(series.min_terms + 1):
        if bound(m) <= threshold:
            return m
    lo, hi = series.min_terms, series.min_terms
    while bound(hi) > threshold:
        lo = hi
        hi *= 2
        if hi > budget:
            raise SeriesBudgetExceeded(f"tail threshold {threshold:g} needs m* beyond the term budget")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= threshold:
            hi = mid
        else:
            lo = mid
    return hi


def certify_theorem2(
    k: float,
    s: float,
    t: float,
    w: WeightFamily,
    w_hat: WeightFamily,
    epsilon: float,
    kappa: float,
    window: Tuple[int, int] = (-DEFAULT_TOLERANCES.sampling.probe_window, DEFAULT_TOLERANCES.sampling.probe_window),
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
    max_terms: Optional[int] = None,
) -> CompactnessCertificate:
    """Certificate for h^{k,s}_w compactly embedded in l^t_{w_hat}."""
    ratio = ratio_condition_check(w, w_hat, s, t, window)
    m_star = tail_rank_theorem2(k, s, t, ratio.c1, epsilon, kappa, w.domain, tol, max_terms)
    constant = theorem2_constant(k, s, t, ratio.c1, w.domain, tol, max_terms)
    cert = CompactnessCertificate.issue(
        Theorem.T2, m_star, epsilon, kappa, w.domain, constant=constant, rigorous=ratio.analytic
    )
    logger.info(f"[CERT] T2 k={k} s={s} t={t}: m*={m_star}, constant={constant:.8g}, rigorous={ratio.analytic}")
    return cert


def certificate_tail_norm(cert: CompactnessCertificate, target: SpaceParams, p: SeqVector) -> float:
    """||p - truncate(p, m*)|| in the target space; the certificate promises <= epsilon/2."""
    return norm(target, tail(p, cert.m_star))
