"""End-to-end demonstrations: the Gibbs-weight chain and Pitt factorization of a diagonal operator."""

from __future__ import annotations

import logging
import math
from typing import Any, Dict, Optional

import numpy as np

from core.embeddings import certify_theorem2, series_enclosure, sharpness_probe, theorem2_report
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.operators import (
    DecayEnvelope,
    FiniteSectionOperator,
    compactness_witness,
    diagonal_norm,
    operator_norm_lower,
    operator_norm_upper,
    pitt_conjugate,
    pitt_deconjugate,
)
from core.spaces import SpaceParams, log_basis_norms
from core.weights import IndexDomain, WeightFamily

logger = logging.getLogger(__name__)


def gibbs_demo(
    beta: float = 1.0,
    k: float = 1.0,
    s: float = 2.0,
    t: float = 1.0,
    epsilon: float = 0.2,
    kappa: float = 1.0,
    trials: int = DEFAULT_TOLERANCES.sampling.trials,
    seed: int = 0,
    window: int = DEFAULT_TOLERANCES.sampling.probe_window,
    tol: float = DEFAULT_TOLERANCES.series.default_tol,
    max_terms: Optional[int] = None,
) -> Dict[str, Any]:
    """h^{k,s}_{w_beta} -> l^t_{w_beta t/s} -> l^s_{w_beta} on the half line."""
    w = WeightFamily.gibbs(beta)
    w_hat = WeightFamily.gibbs(beta * t / s)
    reports = theorem2_report(w, w_hat, k, s, t, window=(0, window), tol=tol, max_terms=max_terms)
    series = series_enclosure(k, s, t, IndexDomain.HALF_LINE, tol, max_terms)
    cert = certify_theorem2(k, s, t, w, w_hat, epsilon, kappa, window=(0, window), tol=tol, max_terms=max_terms)

    src = SpaceParams.create(k, s, w)
    probe = sharpness_probe(src, SpaceParams.create(0.0, t, w_hat), trials, seed=seed, window=window)
    constant = reports.first.constant
    bound = constant * (1.0 + DEFAULT_TOLERANCES.comparison.constant_slack)
    logger.info(f"[GIBBS] beta={beta}: constant={constant:.8g}, probe={probe:.8g}")
    return {
        "scenario": "gibbs-demo",
        "beta": beta,
        "k": k,
        "s": s,
        "t": t,
        "w": w.describe(),
        "w_hat": w_hat.describe(),
        "c1": reports.ratio.c1,
        "c2": reports.ratio.c2,
        "analytic": reports.ratio.analytic,
        "series": series.to_dict(),
        "t2_constant": constant,
        "second_constant": reports.second.constant,
        "chain": list(reports.labels()),
        "chain_spaces": [f"h^({k:g},{s:g})_w", f"l^{t:g}_w_hat", f"l^{s:g}_w"],
        "certificate": cert.to_dict(),
        "probe": {"trials": trials, "seed": seed, "window": window, "max_ratio": probe, "within_constant": probe <= bound},
    }


def pitt_demo(
    k: float = 1.0,
    s: float = 2.0,
    t: float = 1.0,
    gamma: float = 2.0,
    w: Optional[WeightFamily] = None,
    window: int = 20,
    epsilon: float = 0.01,
    probes: int = 200,
    seed: int = 0,
) -> Dict[str, Any]:
    """Diagonal T: h^{k,s}_w -> h^{k,t}_w whose conjugate C has symbol (1+|m|)^(-gamma).

    Conjugates T, brackets ||C||, checks the round trip and runs the
    compactness witness with the matching power envelope.
    """
    w = w or WeightFamily.constant(1.0)
    src = SpaceParams.create(k, s, w)
    tgt = SpaceParams.create(k, t, w)
    lo = 0 if src.domain is IndexDomain.HALF_LINE else -window
    bounds = (lo, window)

    def entry_fn(m: int, n: int) -> complex:
        if m != n:
            return 0j
        index = np.array([m])
        log_scale = float(log_basis_norms(src, index)[0] - log_basis_norms(tgt, index)[0])
        return complex(math.exp(log_scale - gamma * math.log1p(abs(m))))

    T = FiniteSectionOperator.from_entry_fn(entry_fn, bounds, src, tgt)
    C = pitt_conjugate(T)
    symbol = np.diag(C.entries)
    expected = np.exp(-gamma * np.log1p(np.abs(C.indices().astype(float))))
    restored = pitt_deconjugate(C, src, tgt)
    round_trip = float(np.max(np.abs(restored.entries - T.entries) / np.maximum(np.abs(T.entries), 1e-300)))

    witness = compactness_witness(entry_fn, DecayEnvelope.power(gamma), src, tgt, epsilon, check_window=bounds)
    logger.info(f"[PITT] gamma={gamma}: n_eps={witness.n_eps}, certified_error={witness.certified_error:.6g}")
    return {
        "scenario": "pitt-demo",
        "src": src.to_dict(),
        "tgt": tgt.to_dict(),
        "gamma": gamma,
        "window": list(bounds),
        "symbol_max_deviation": float(np.max(np.abs(symbol - expected))),
        "round_trip_max_rel_error": round_trip,
        "norm": {
            "lower": operator_norm_lower(C, probes, seed),
            "exact_diagonal": diagonal_norm(symbol, s, t),
            "upper": operator_norm_upper(C),
        },
        "witness": witness.to_dict(),
    }
