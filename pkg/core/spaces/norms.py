"""Norm, inner product, basis and truncation operations on h^{k,s}_w."""

from __future__ import annotations

import math
import sys

import numpy as np

from core.errors import IndexOutsideDomain, NormOverflow, NotAHilbertSpace
from core.spaces.types import SeqVector, SpaceParams
from core.weights.families import log_weights

LOG_FLOAT_MAX = math.log(sys.float_info.max)


def _check_support(sp: SpaceParams, p: SeqVector) -> None:
    if not p.is_zero and not all(sp.domain.contains(m) for m in p.support):
        bad = next(m for m in p.support if not sp.domain.contains(m))
        raise IndexOutsideDomain(f"index {bad} lies outside the {sp.domain.value} line")


def exp_checked(log_value: float, what: str) -> float:
    """exp(log_value), raising NormOverflow instead of returning inf."""
    if log_value > LOG_FLOAT_MAX:
        raise NormOverflow(f"{what} exceeds the float range (natural log {log_value:.6g})")
    try:
        return math.exp(log_value)
    except OverflowError:
        raise NormOverflow(f"{what} exceeds the float range (natural log {log_value:.6g})") from None


def log_one_plus_power(indices: np.ndarray, s: float) -> np.ndarray:
    """ln(1 + |m|^s), computed without forming |m|^s."""
    magnitude = np.abs(np.asarray(indices, dtype=float))
    out = np.zeros_like(magnitude)
    nonzero = magnitude > 0
    out[nonzero] = np.logaddexp(0.0, s * np.log(magnitude[nonzero]))
    return out


def log_basis_norms(sp: SpaceParams, indices: np.ndarray) -> np.ndarray:
    """ln ||e_m||_{k,s,w} = (1/s)[ln w_m + k ln(1+|m|^s)] for each index."""
    indices = np.asarray(indices, dtype=np.int64)
    return (log_weights(sp.w, indices) + sp.k * log_one_plus_power(indices, sp.s)) / sp.s


def basis_norm(sp: SpaceParams, m: int) -> float:
    """Closed form w_m^{1/s}(1+|m|^s)^{k/s}."""
    if not sp.domain.contains(m):
        raise IndexOutsideDomain(f"index {m} lies outside the {sp.domain.value} line")
    return exp_checked(float(log_basis_norms(sp, np.array([m]))[0]), f"||e_{m}||")


def log_norm_power(sp: SpaceParams, p: SeqVector) -> float:
    """ln of sum_m w_m (1+|m|^s)^k |p_m|^s, or -inf for the zero vector.

    Terms are assembled in log domain, rescaled by the largest one and
    accumulated with math.fsum in summation order.
    """
    _check_support(sp, p)
    if p.is_zero:
        return -math.inf
    magnitudes = np.abs(p.values())
    log_terms = sp.s * log_basis_norms(sp, p.indices()) + sp.s * np.log(magnitudes)
    peak = float(log_terms.max())
    return peak + math.log(math.fsum(np.exp(log_terms - peak)))


def norm(sp: SpaceParams, p: SeqVector) -> float:
    """||p||_{k,s,w}; the k = 0 case is the plain weighted l^s norm."""
    log_power = log_norm_power(sp, p)
    if log_power == -math.inf:
        return 0.0
    return exp_checked(log_power / sp.s, "||p||")


def norm_power(sp: SpaceParams, p: SeqVector) -> float:
    """||p||_{k,s,w}^s."""
    log_power = log_norm_power(sp, p)
    return 0.0 if log_power == -math.inf else exp_checked(log_power, "||p||^s")


def unweighted_norm(p: SeqVector, s: float) -> float:
    """Plain l^s norm (w = 1, k = 0), s = inf allowed."""
    if p.is_zero:
        return 0.0
    magnitudes = np.abs(p.values())
    peak = float(magnitudes.max())
    if math.isinf(s):
        return peak
    return peak * math.fsum((magnitudes / peak) ** s) ** (1.0 / s)


def inner_product(sp: SpaceParams, p: SeqVector, q: SeqVector) -> complex:
    """(p, q)_{k,2,w} = sum_m w_m (1+m^2)^k p_m conj(q_m)."""
    if sp.s != 2:
        raise NotAHilbertSpace(f"h^(k,s)_w is a Hilbert space only for s = 2, got s={sp.s}")
    _check_support(sp, p)
    _check_support(sp, q)
    q_values = q.as_dict()
    common = [(m, v, q_values[m]) for m, v in p if m in q_values]
    if not common:
        return 0j
    indices = np.array([m for m, _, _ in common], dtype=np.int64)
    factors = [exp_checked(2.0 * log_factor, f"||e_{m}||^2") for m, log_factor in zip(indices.tolist(), log_basis_norms(sp, indices))]
    terms = [f * a * b.conjugate() for f, (_, a, b) in zip(factors, common)]
    try:
        value = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    except (OverflowError, ValueError):
        raise NormOverflow("(p, q) exceeds the float range") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NormOverflow("(p, q) exceeds the float range")
    return value


def basis_vector(m: int) -> SeqVector:
    """Schauder basis vector e_m."""
    return SeqVector(((int(m), 1 + 0j),))


def truncate(p: SeqVector, M: int) -> SeqVector:
    """p_M = sum_{|m| < M} p_m e_m."""
    if M < 0:
        raise ValueError(f"truncation rank must be nonnegative, got {M}")
    return p.restrict(lambda m: abs(m) < M)


def tail(p: SeqVector, M: int) -> SeqVector:
    """p - truncate(p, M)."""
    if M < 0:
        raise ValueError(f"truncation rank must be nonnegative, got {M}")
    return p.restrict(lambda m: abs(m) >= M)


def expansion_remainder(sp: SpaceParams, p: SeqVector, N: int) -> float:
    """||p - sum_{|m| <= N} p_m e_m||_{k,s,w}."""
    if N < 0:
        raise ValueError(f"expansion order must be nonnegative, got {N}")
    return norm(sp, p.restrict(lambda m: abs(m) > N))
