"""Certified summation of sum_m (1+|m|^s)^{-kr/s}, r = st/(s-t).

The summand f(x) = (1+x^s)^{-a}, a = kr/s, is decreasing on x >= 0 and
convex once x^s >= (s-1)/(kr+1). On the convex range the one-sided tail
T(M) = sum_{m>M} f(m) is enclosed by the trapezoid and midpoint rules,

    I(M) - f(M)/2 <= T(M) <= I(M + 1/2),    I(x) = int_x^inf f,

and I has the closed form (1/s) B(1/(1+x^s); a - 1/s, 1/s) through the
incomplete beta function.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy import special

from core.embeddings.types import SeriesSum
from core.errors import InvalidExponents, SeriesBudgetExceeded, SeriesDiverges
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.weights.types import IndexDomain

logger = logging.getLogger(__name__)


def duality_exponent(s: float, t: float) -> float:
    """r = st/(s-t), so that 1/r + 1/s = 1/t."""
    if t < 1 or s <= t:
        raise InvalidExponents(f"need s > t >= 1, got s={s}, t={t}")
    return s * t / (s - t)


class WeightSeries:
    """The summand of the two-weight embedding series and its tail enclosures."""

    def __init__(self, k: float, s: float, t: float):
        self.r = duality_exponent(s, t)
        self.k = float(k)
        self.s = float(s)
        self.t = float(t)
        self.kr = self.k * self.r
        if not self.kr > 1:
            raise SeriesDiverges(
                f"sum (1+|m|^s)^(-kr/s) diverges: need k > (s-t)/(st) = {(s - t) / (s * t):.6g}, got k={k}"
            )
        self.a = self.kr / self.s
        self._p = (self.kr - 1.0) / self.s
        self._q = 1.0 / self.s
        self._beta = special.beta(self._p, self._q)
        convex_from = ((self.s - 1.0) / (self.kr + 1.0)) ** (1.0 / self.s)
        self.min_terms = max(DEFAULT_TOLERANCES.series.min_terms, int(math.ceil(convex_from)))

    def terms(self, start: int, stop: int) -> np.ndarray:
        """f(m) for start <= m < stop."""
        m = np.arange(start, stop, dtype=float)
        log_base = np.zeros_like(m)
        nonzero = m > 0
        log_base[nonzero] = np.logaddexp(0.0, self.s * np.log(m[nonzero]))
        return np.exp(-self.a * log_base)

    def term(self, m: float) -> float:
        if m == 0:
            return 1.0
        return math.exp(-self.a * np.logaddexp(0.0, self.s * math.log(abs(m))))

    def tail_integral(self, x: float) -> float:
        """I(x) = int_x^inf (1+y^s)^{-kr/s} dy for x > 0."""
        u0 = math.exp(-np.logaddexp(0.0, self.s * math.log(x)))
        return float(special.betainc(self._p, self._q, u0) * self._beta / self.s)

    def crude_tail_bound(self, M: float) -> float:
        """Majorant M^{1-kr}/(kr-1) of I(M), valid for M >= 1."""
        return M ** (1.0 - self.kr) / (self.kr - 1.0)

    def tail_enclosure(self, M: int) -> Tuple[float, float]:
        """Bounds on sum_{m > M} f(m); requires M >= min_terms."""
        if M < self.min_terms:
            raise ValueError(f"tail enclosure needs M >= {self.min_terms}, got {M}")
        lower = self.tail_integral(M) - self.term(M) / 2.0
        upper = self.tail_integral(M + 0.5)
        return max(lower, 0.0), upper

    def partial_half_sum(self, M: int) -> float:
        """sum_{m=0}^{M} f(m), compensated."""
        return math.fsum(self.terms(0, M + 1))

    def tail_upper_from(self, m: int) -> float:
        """Upper bound on sum_{m' >= m} f(m') for m >= min_terms."""
        return self.term(m) + self.tail_integral(m + 0.5)


def _multiplier(domain: IndexDomain) -> int:
    return 2 if domain is IndexDomain.FULL_LINE else 1


def _cutoff_for(series: WeightSeries, domain: IndexDomain, tol: float, max_terms: int) -> int:
    """Smallest M >= min_terms whose enclosure width is <= tol."""
    mult = _multiplier(domain)

    def width(M: int) -> float:
        lower, upper = series.tail_enclosure(M)
        return mult * (upper - lower)

    lo = series.min_terms
    if width(lo) <= tol:
        return lo
    hi = lo
    while width(hi) > tol:
        lo = hi
        hi *= 2
        if hi > max_terms:
            raise SeriesBudgetExceeded(
                f"certifying the series to tol={tol:g} needs more than {max_terms} terms"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if width(mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def series_enclosure(
    k: float,
    s: float,
    t: float,
    domain: IndexDomain = IndexDomain.FULL_LINE,
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
    max_terms: Optional[int] = None,
) -> SeriesSum:
    """Certified enclosure of sum over ``domain`` of (1+|m|^s)^{-kr/s}."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    series = WeightSeries(k, s, t)
    max_terms = DEFAULT_TOLERANCES.series.max_terms if max_terms is None else max_terms
    M = _cutoff_for(series, domain, tol, max_terms)
    half = series.partial_half_sum(M)
    tail_lo, tail_hi = series.tail_enclosure(M)
    if domain is IndexDomain.FULL_LINE:
        partial = 2.0 * half - 1.0
        lower, upper = partial + 2.0 * tail_lo, partial + 2.0 * tail_hi
    else:
        lower, upper = half + tail_lo, half + tail_hi
    value = (lower + upper) / 2.0
    logger.debug(f"[SERIES] k={k} s={s} t={t} {domain.value}: value={value:.12g} after {M} terms")
    return SeriesSum(
        value=value,
        lower=lower,
        upper=upper,
        terms=M,
        k=float(k),
        s=float(s),
        t=float(t),
        r=series.r,
        domain=domain,
        tol=float(tol),
    )


def weight_series_sum(
    k: float,
    s: float,
    t: float,
    domain: IndexDomain = IndexDomain.FULL_LINE,
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
) -> float:
    """Sum of (1+|m|^s)^{-kr/s} over the domain, to absolute error <= tol."""
    return series_enclosure(k, s, t, domain, tol).value


def symmetric_tail_upper(series: WeightSeries, total: SeriesSum, m_star: int) -> float:
    """Certified upper bound on sum_{|m| >= m_star} f(m) over the domain of ``total``."""
    if m_star == 0:
        return total.upper
    if m_star >= series.min_terms:
        return _multiplier(total.domain) * series.tail_upper_from(m_star)
    half = series.partial_half_sum(m_star - 1)
    inner = 2.0 * half - 1.0 if total.domain is IndexDomain.FULL_LINE else half
    return max(total.upper - inner, 0.0)
