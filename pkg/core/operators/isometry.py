"""The isometry J_{k,s,w}: h^{k,s}_w -> l^s and Pitt conjugation of finite sections."""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from core.errors import IndexOutsideDomain, NormOverflow, NotContinuous, ParameterMismatch
from core.operators.types import FiniteSectionOperator, unweighted_space
from core.spaces.norms import LOG_FLOAT_MAX, log_basis_norms, log_one_plus_power
from core.spaces.types import SeqVector, SpaceParams

logger = logging.getLogger(__name__)


def _scaling(sp: SpaceParams, indices: np.ndarray) -> np.ndarray:
    """w_m^{1/s}(1+|m|^s)^{k/s}, which is also ||e_m||_{k,s,w}."""
    return np.exp(log_basis_norms(sp, indices))


def _check_support(sp: SpaceParams, p: SeqVector) -> None:
    for m in p.support:
        if not sp.domain.contains(m):
            raise IndexOutsideDomain(f"index {m} lies outside the {sp.domain.value} line")


def isometry_apply(sp: SpaceParams, p: SeqVector) -> SeqVector:
    """(J p)_m = w_m^{1/s}(1+|m|^s)^{k/s} p_m."""
    _check_support(sp, p)
    if p.is_zero:
        return p
    values = p.values()
    log_scaling = log_basis_norms(sp, p.indices())
    log_entries = log_scaling + np.log(np.abs(values))
    if float(log_entries.max()) > LOG_FLOAT_MAX:
        worst = p.support[int(np.argmax(log_entries))]
        raise NormOverflow(f"(J p)_{worst} exceeds the float range (natural log {float(log_entries.max()):.6g})")
    with np.errstate(over="ignore", invalid="ignore"):
        scaled = values * np.exp(log_scaling)
    # scaling alone overflows here; rebuild from the log-domain entry
    overflowed = ~np.isfinite(scaled)
    scaled[overflowed] = np.exp(log_entries[overflowed]) * (values[overflowed] / np.abs(values[overflowed]))
    return SeqVector.from_arrays(p.support, scaled.tolist())


def isometry_invert(sp: SpaceParams, q: SeqVector) -> SeqVector:
    """(J^{-1} q)_m = q_m / (w_m^{1/s}(1+|m|^s)^{k/s})."""
    _check_support(sp, q)
    if q.is_zero:
        return q
    return SeqVector.from_arrays(q.support, (q.values() / _scaling(sp, q.indices())).tolist())


def check_pitt_pair(src: SpaceParams, tgt: SpaceParams) -> None:
    if src.k != tgt.k or src.w != tgt.w or src.domain is not tgt.domain:
        raise ParameterMismatch(
            f"conjugation needs one order and weight on both sides, got src={src.to_dict()}, tgt={tgt.to_dict()}"
        )
    if not src.s > tgt.s >= 1:
        raise ParameterMismatch(f"conjugation needs s > t >= 1, got s={src.s}, t={tgt.s}")


def _row_col_scalings(src: SpaceParams, tgt: SpaceParams, indices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return _scaling(tgt, indices), _scaling(src, indices)


def pitt_conjugate(T: FiniteSectionOperator) -> FiniteSectionOperator:
    """C = J_{k,t,w} T J_{k,s,w}^{-1}, acting between unweighted l^s and l^t."""
    check_pitt_pair(T.src, T.tgt)
    rows, cols = _row_col_scalings(T.src, T.tgt, T.indices())
    C = rows[:, None] * T.entries / cols[None, :]
    logger.debug(f"[PITT] conjugated window {T.window} from s={T.src.s} to t={T.tgt.s}")
    domain = T.src.domain
    return T.with_spaces(C, unweighted_space(T.src.s, domain), unweighted_space(T.tgt.s, domain))


def pitt_deconjugate(C: FiniteSectionOperator, src: SpaceParams, tgt: SpaceParams) -> FiniteSectionOperator:
    """T = J_{k,t,w}^{-1} C J_{k,s,w}, the inverse of :func:`pitt_conjugate`."""
    check_pitt_pair(src, tgt)
    if C.src.s != src.s or C.tgt.s != tgt.s:
        raise ParameterMismatch(
            f"conjugated operator maps l^{C.src.s:g} -> l^{C.tgt.s:g}, spaces ask for s={src.s:g}, t={tgt.s:g}"
        )
    rows, cols = _row_col_scalings(src, tgt, C.indices())
    T = C.entries / rows[:, None] * cols[None, :]
    return C.with_spaces(T, src, tgt)


def embedding_as_diagonal(src: SpaceParams, tgt: SpaceParams, window: Tuple[int, int]) -> FiniteSectionOperator:
    """The inclusion h^{src.k,s}_w -> h^{tgt.k,s}_w as a diagonal on l^s.

    d_m = (1+|m|^s)^{(tgt.k - src.k)/s} = ||e_m||_tgt / ||e_m||_src.
    """
    if src.s != tgt.s or src.w != tgt.w or src.domain is not tgt.domain:
        raise ParameterMismatch("embedding as a diagonal needs one summability and weight on both sides")
    if tgt.k > src.k:
        raise NotContinuous(f"h^({src.k:g},s)_w does not embed continuously into h^({tgt.k:g},s)_w")
    indices = np.arange(window[0], window[1] + 1, dtype=np.int64)
    d = np.exp((tgt.k - src.k) * log_one_plus_power(indices, src.s) / src.s)
    plain = unweighted_space(src.s, src.domain)
    return FiniteSectionOperator.diagonal(d, window, plain, plain)


def apply(A: FiniteSectionOperator, p: SeqVector) -> SeqVector:
    """A p, with the entries of p outside the window dropped."""
    _check_support(A.src, p)
    lo, hi = A.window
    x = np.zeros(A.size, dtype=np.complex128)
    for m, value in p:
        if lo <= m <= hi:
            x[m - lo] = value
    y = A.entries @ x
    return SeqVector.from_arrays(A.indices().tolist(), y.tolist())
