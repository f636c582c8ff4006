"""Sound upper and empirical lower bounds for l^s -> l^t norms of finite sections."""

from __future__ import annotations

import logging
import math

import numpy as np

from core.errors import InvalidExponents, ParameterMismatch
from core.operators.types import FiniteSectionOperator, is_unweighted
from core.spaces.sampling import trial_rng

logger = logging.getLogger(__name__)


def holder_conjugate(s: float) -> float:
    """s' with 1/s + 1/s' = 1."""
    if s < 1:
        raise InvalidExponents(f"Hölder conjugate needs s >= 1, got {s}")
    if s == 1:
        return math.inf
    if math.isinf(s):
        return 1.0
    return s / (s - 1.0)


def _lp(x: np.ndarray, p: float, axis: int = -1) -> np.ndarray:
    return np.linalg.norm(x, ord=p, axis=axis) if math.isinf(p) else np.sum(np.abs(x) ** p, axis=axis) ** (1.0 / p)


def _require_plain(A: FiniteSectionOperator) -> None:
    if not (is_unweighted(A.src) and is_unweighted(A.tgt)):
        raise ParameterMismatch("norm bounds act on unweighted l^s -> l^t; conjugate with pitt_conjugate first")


def row_norms(A: FiniteSectionOperator) -> np.ndarray:
    """||row_m||_{s'} for every row of the window."""
    return _lp(A.entries, holder_conjugate(A.src.s), axis=1)


def operator_norm_upper(A: FiniteSectionOperator) -> float:
    """B(A) = (sum_m ||row_m||_{s'}^t)^{1/t}, so ||Ap||_t <= B(A) ||p||_s."""
    _require_plain(A)
    return float(_lp(row_norms(A), A.tgt.s))


def operator_norm_lower(A: FiniteSectionOperator, probes: int, seed: int = 0) -> float:
    """max ||Ap||_t / ||p||_s over the basis vectors and ``probes`` seeded random vectors."""
    if probes < 1:
        raise ValueError(f"probes must be >= 1, got {probes}")
    _require_plain(A)
    s, t = A.src.s, A.tgt.s
    best = float(np.max(_lp(A.entries, t, axis=0)))
    for trial in range(probes):
        rng = trial_rng(seed, trial)
        x = rng.standard_normal(A.size) + 1j * rng.standard_normal(A.size)
        best = max(best, float(_lp(A.entries @ x, t) / _lp(x, s)))
    logger.debug(f"[PITT] lower bound {best:.12g} from {probes} probes on window {A.window}")
    return best


def diagonal_norm(d: np.ndarray, s: float, t: float) -> float:
    """Exact l^s -> l^t norm of diag(d): max|d_m| if t >= s, else ||d||_r with r = st/(s-t)."""
    magnitudes = np.abs(np.asarray(d, dtype=np.complex128))
    if magnitudes.size == 0:
        return 0.0
    if t >= s:
        return float(magnitudes.max())
    return float(_lp(magnitudes, s * t / (s - t)))
