from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from core.embeddings import (
    certificate_tail_norm,
    certify_theorem1,
    certify_theorem1b,
    certify_theorem2,
    summability_constant,
    tail_rank_theorem1,
    theorem2_report,
)
from core.embeddings.certificates import theorem1_tail_holds
from core.errors import SobolevError
from core.logging.events import EventLogger
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.operators import (
    FiniteSectionOperator,
    isometry_apply,
    isometry_invert,
    operator_norm_lower,
    operator_norm_upper,
    pitt_conjugate,
    pitt_deconjugate,
    unweighted_space,
)
from core.spaces import (
    SeqVector,
    SpaceParams,
    basis_vector,
    norm,
    random_vector,
    sphere_sample,
    trial_rng,
    unweighted_norm,
)
from core.weights import IndexDomain, WeightFamily, weight_at

logger = logging.getLogger(__name__)

SUITES = ("norm-axioms", "monotonicity", "t1b", "t2", "certificates", "isometry")

# A check returns None on success or the counterexample to report.
Check = Callable[[int, np.random.Generator], Optional[Dict[str, Any]]]


def vector_payload(p: SeqVector) -> List[List[float]]:
    return [[m, v.real, v.imag] for m, v in p.entries]


def _grid() -> List[SpaceParams]:
    weights = [
        WeightFamily.constant(1.0),
        WeightFamily.constant(4.0),
        WeightFamily.polynomial(2.0),
        WeightFamily.gibbs(1.0),
    ]
    return [SpaceParams.create(k, s, w) for w in weights for s in (1.0, 2.0, 3.0) for k in (-1.0, 0.0, 1.0, 2.5)]


def _close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b)) + DEFAULT_TOLERANCES.comparison.abs_floor


@dataclass
class VerifyConfig:
    """Configuration for a verify run."""

    suite: str = "norm-axioms"
    trials: int = DEFAULT_TOLERANCES.sampling.trials
    seed: int = DEFAULT_TOLERANCES.sampling.seed
    workers: int = 1
    window: int = DEFAULT_TOLERANCES.sampling.probe_window
    support_size: int = DEFAULT_TOLERANCES.sampling.support_size
    rel_tol: float = DEFAULT_TOLERANCES.comparison.rel_tol
    series_tol: float = DEFAULT_TOLERANCES.series.default_tol
    max_series_terms: int = DEFAULT_TOLERANCES.series.max_terms


@dataclass
class PropertyResult:
    name: str
    trials: int
    passed: int
    counterexample: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.trials

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class VerifyResults:
    suite: str
    seed: int
    trials: int
    properties: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(prop.ok for prop in self.properties)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": "verify",
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "status": "pass" if self.passed else "fail",
            "properties": [prop.to_dict() for prop in self.properties],
        }


class VerificationRunner:
    """Runs one invariant suite with seeded, per-trial random streams."""

    def __init__(self, config: Optional[VerifyConfig] = None, event_logger: Optional[EventLogger] = None):
        self.config = config or VerifyConfig()
        if self.config.suite not in SUITES:
            raise ValueError(f"unknown suite {self.config.suite!r}; choose from {', '.join(SUITES)}")
        for name in ("trials", "workers", "window", "support_size", "max_series_terms"):
            if getattr(self.config, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self.config, name)}")
        if not (self.config.rel_tol > 0 and self.config.series_tol > 0):
            raise ValueError(f"tolerances must be positive, got rel_tol={self.config.rel_tol}, series_tol={self.config.series_tol}")
        self.event_logger = event_logger
        self.grid = _grid()

    def run(self) -> VerifyResults:
        results = VerifyResults(suite=self.config.suite, seed=self.config.seed, trials=self.config.trials)
        for name, check in self._properties():
            results.properties.append(self._run_property(name, check))
        logger.info(f"[VERIFY] suite {self.config.suite}: {'pass' if results.passed else 'fail'}")
        return results

    def _run_property(self, name: str, check: Check) -> PropertyResult:
        def one(trial: int) -> Optional[Dict[str, Any]]:
            rng = trial_rng(self.config.seed, trial)
            try:
                return check(trial, rng)
            except SobolevError as exc:
                return {"trial": trial, "error": type(exc).__name__, "message": str(exc)}

        trials = range(self.config.trials)
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                outcomes = list(pool.map(one, trials))
        else:
            outcomes = [one(trial) for trial in trials]

        failures = [(trial, outcome) for trial, outcome in enumerate(outcomes) if outcome is not None]
        result = PropertyResult(name=name, trials=self.config.trials, passed=len(outcomes) - len(failures))
        if failures:
            trial, counterexample = failures[0]
            result.counterexample = {"trial": trial, **counterexample}
            logger.warning(f"[VERIFY] {self.config.suite}/{name} failed at trial {trial}")
            if self.event_logger:
                self.event_logger.log_property_failure(self.config.suite, name, trial, result.counterexample)
        if self.event_logger:
            self.event_logger.log_property(self.config.suite, name, result.passed, result.trials)
        return result

    def _properties(self) -> List[Tuple[str, Check]]:
        return {
            "norm-axioms": self._norm_axioms,
            "monotonicity": self._monotonicity,
            "t1b": self._t1b,
            "t2": self._t2,
            "certificates": self._certificates,
            "isometry": self._isometry,
        }[self.config.suite]()

    # ------------------------------------------------------------------ helpers

    def _space(self, trial: int) -> SpaceParams:
        return self.grid[trial % len(self.grid)]

    def _vector(self, rng: np.random.Generator, domain: IndexDomain) -> SeqVector:
        window = (-self.config.window, self.config.window)
        return random_vector(rng, window, self.config.support_size, domain)

    # ------------------------------------------------------------------ suites

    def _norm_axioms(self) -> List[Tuple[str, Check]]:
        rel = self.config.rel_tol
        slack = DEFAULT_TOLERANCES.comparison.constant_slack

        def definiteness(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            p = self._vector(rng, sp.domain)
            if norm(sp, p) > 0 and norm(sp, SeqVector.zero()) == 0:
                return None
            return {"space": sp.to_dict(), "p": vector_payload(p)}

        def homogeneity(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            p = self._vector(rng, sp.domain)
            alpha = complex(rng.normal(), rng.normal()) * 10.0 ** rng.uniform(-2, 2)
            if _close(norm(sp, p.scale(alpha)), abs(alpha) * norm(sp, p), 4 * rel):
                return None
            return {"space": sp.to_dict(), "p": vector_payload(p), "alpha": [alpha.real, alpha.imag]}

        def triangle(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            p, q = self._vector(rng, sp.domain), self._vector(rng, sp.domain)
            if norm(sp, p + q) <= (norm(sp, p) + norm(sp, q)) * (1 + rel):
                return None
            return {"space": sp.to_dict(), "p": vector_payload(p), "q": vector_payload(q)}

        def basis_formula(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            lo = 0 if sp.domain is IndexDomain.HALF_LINE else -self.config.window
            m = int(rng.integers(lo, self.config.window + 1))
            expected = weight_at(sp.w, m) ** (1 / sp.s) * (1 + abs(m) ** sp.s) ** (sp.k / sp.s)
            if _close(norm(sp, basis_vector(m)), expected, rel):
                return None
            return {"space": sp.to_dict(), "m": m}

        def parallelogram(trial: int, rng: np.random.Generator):
            sp = self._space(trial).with_summability(2.0)
            p, q = self._vector(rng, sp.domain), self._vector(rng, sp.domain)
            lhs = norm(sp, p + q) ** 2 + norm(sp, p - q) ** 2
            rhs = 2 * norm(sp, p) ** 2 + 2 * norm(sp, q) ** 2
            if _close(lhs, rhs, slack):
                return None
            return {"space": sp.to_dict(), "p": vector_payload(p), "q": vector_payload(q)}

        return [
            ("definiteness", definiteness),
            ("homogeneity", homogeneity),
            ("triangle_inequality", triangle),
            ("basis_norm_formula", basis_formula),
            ("parallelogram_s2", parallelogram),
        ]

    def _monotonicity(self) -> List[Tuple[str, Check]]:
        rel = self.config.rel_tol

        def order(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            k, k_prime = sorted(rng.uniform(-1.0, 3.0, size=2).tolist())
            p = self._vector(rng, sp.domain)
            low, high = norm(sp.with_order(k), p), norm(sp.with_order(k_prime), p)
            if low <= high * (1 + rel) + 1e-12:
                return None
            return {"space": sp.to_dict(), "k": k, "k_prime": k_prime, "p": vector_payload(p)}

        return [("norm_nondecreasing_in_k", order)]

    def _t1b(self) -> List[Tuple[str, Check]]:
        slack = 1.0 + DEFAULT_TOLERANCES.comparison.constant_slack
        weights = [WeightFamily.constant(1.0), WeightFamily.constant(4.0), WeightFamily.polynomial(2.0)]
        pairs = [(2.0, 1.0), (3.0, 2.0), (2.0, 2.0)]
        orders = [0.0, 1.0, 2.5]
        configs = [(k, s, t, w) for w in weights for s, t in pairs for k in orders]

        def constant_bound(trial: int, rng: np.random.Generator):
            k, s, t, w = configs[trial % len(configs)]
            c_st = summability_constant(k, s, t, w)
            m = int(rng.integers(-self.config.window, self.config.window + 1))
            for p in (self._vector(rng, w.domain), basis_vector(m)):
                if norm(SpaceParams.create(k, s, w), p) > c_st * norm(SpaceParams.create(k, t, w), p) * slack:
                    return {"k": k, "s": s, "t": t, "w": w.describe(), "c_st": c_st, "p": vector_payload(p)}
            return None

        cert = certify_theorem1b(0.0, 1.0, 2.0, 1.0, WeightFamily.constant(4.0), 0.2, 1.0)
        source = SpaceParams.create(1.0, 1.0, WeightFamily.constant(4.0))
        target = SpaceParams.create(0.0, 2.0, WeightFamily.constant(4.0))

        def certificate(trial: int, rng: np.random.Generator):
            window = (-self.config.window, self.config.window)
            p = sphere_sample(source, cert.kappa, rng, window, self.config.support_size)
            tail = certificate_tail_norm(cert, target, p)
            if tail <= cert.guaranteed_tail * slack:
                return None
            return {"certificate": cert.to_dict(), "tail": tail, "p": vector_payload(p)}

        return [("summability_constant_bound", constant_bound), ("theorem1b_certificate", certificate)]

    def _t2(self) -> List[Tuple[str, Check]]:
        slack = 1.0 + DEFAULT_TOLERANCES.comparison.constant_slack
        k, s, t = 1.0, 2.0, 1.0
        configs = []
        for w, w_hat in (
            (WeightFamily.gibbs(1.0), WeightFamily.gibbs(0.5)),
            (WeightFamily.constant(1.0), WeightFamily.constant(1.0)),
        ):
            lo = 0 if w.domain is IndexDomain.HALF_LINE else -self.config.window
            reports = theorem2_report(
                w, w_hat, k, s, t, window=(lo, self.config.window), tol=self.config.series_tol, max_terms=self.config.max_series_terms
            )
            configs.append((w, w_hat, reports))

        def first_link(index: int) -> Check:
            w, w_hat, reports = configs[index]
            src, tgt = SpaceParams.create(k, s, w), SpaceParams.create(0.0, t, w_hat)

            def check(trial: int, rng: np.random.Generator):
                p = self._vector(rng, w.domain)
                if norm(tgt, p) <= reports.first.constant * norm(src, p) * slack:
                    return None
                return {"w": w.describe(), "w_hat": w_hat.describe(), "constant": reports.first.constant, "p": vector_payload(p)}

            return check

        def second_link(trial: int, rng: np.random.Generator):
            w, w_hat, reports = configs[trial % len(configs)]
            p = self._vector(rng, w.domain)
            lhs = norm(SpaceParams.create(0.0, s, w), p)
            if lhs <= reports.second.constant * norm(SpaceParams.create(0.0, t, w_hat), p) * slack:
                return None
            return {"w": w.describe(), "w_hat": w_hat.describe(), "constant": reports.second.constant, "p": vector_payload(p)}

        return [
            ("theorem2_constant_gibbs", first_link(0)),
            ("theorem2_constant_constant_weight", first_link(1)),
            ("theorem2_second_constant", second_link),
        ]

    def _certificates(self) -> List[Tuple[str, Check]]:
        slack = 1.0 + self.config.rel_tol
        w = WeightFamily.constant(1.0)
        cert = certify_theorem1(0.0, 1.0, 2.0, w, 0.2, 1.0)
        source, target = SpaceParams.create(1.0, 2.0, w), SpaceParams.create(0.0, 2.0, w)

        def theorem1_soundness(trial: int, rng: np.random.Generator):
            window = (-self.config.window, self.config.window)
            p = sphere_sample(source, cert.kappa, rng, window, self.config.support_size)
            tail = certificate_tail_norm(cert, target, p)
            if tail <= cert.guaranteed_tail * slack + 1e-12:
                return None
            return {"certificate": cert.to_dict(), "tail": tail, "p": vector_payload(p)}

        def theorem1_minimality(trial: int, rng: np.random.Generator):
            gap = float(rng.uniform(0.5, 3.0))
            s = float(rng.uniform(1.0, 4.0))
            epsilon = float(rng.uniform(0.05, 1.9))
            m_star = tail_rank_theorem1(0.0, gap, s, epsilon, 1.0)
            oracle = 0
            while not theorem1_tail_holds(oracle, gap, s, epsilon, 1.0):
                oracle += 1
            if m_star == oracle:
                return None
            return {"gap": gap, "s": s, "epsilon": epsilon, "m_star": m_star, "oracle": oracle}

        gibbs, gibbs_hat = WeightFamily.gibbs(1.0), WeightFamily.gibbs(0.5)
        t2_cert = certify_theorem2(
            1.0, 2.0, 1.0, gibbs, gibbs_hat, 0.2, 1.0,
            window=(0, self.config.window), tol=self.config.series_tol, max_terms=self.config.max_series_terms,
        )
        t2_source = SpaceParams.create(1.0, 2.0, gibbs)
        t2_target = SpaceParams.create(0.0, 1.0, gibbs_hat)

        def theorem2_soundness(trial: int, rng: np.random.Generator):
            window = (0, max(self.config.window, 2 * t2_cert.m_star))
            p = sphere_sample(t2_source, t2_cert.kappa, rng, window, self.config.support_size)
            tail = certificate_tail_norm(t2_cert, t2_target, p)
            if tail <= t2_cert.guaranteed_tail * slack + 1e-12:
                return None
            return {"certificate": t2_cert.to_dict(), "tail": tail, "p": vector_payload(p)}

        return [
            ("theorem1_certificate_soundness", theorem1_soundness),
            ("theorem1_tail_rank_minimality", theorem1_minimality),
            ("theorem2_certificate_soundness", theorem2_soundness),
        ]

    def _isometry(self) -> List[Tuple[str, Check]]:
        rel = self.config.rel_tol

        def preserves_norm(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            p = self._vector(rng, sp.domain)
            if _close(unweighted_norm(isometry_apply(sp, p), sp.s), norm(sp, p), rel):
                return None
            return {"space": sp.to_dict(), "p": vector_payload(p)}

        def round_trip(trial: int, rng: np.random.Generator):
            sp = self._space(trial)
            p = self._vector(rng, sp.domain)
            back = isometry_invert(sp, isometry_apply(sp, p))
            if back.support == p.support and np.all(np.abs(back.values() - p.values()) <= rel * np.abs(p.values())):
                return None
            return {"space": sp.to_dict(), "p": vector_payload(p)}

        def pitt_round_trip(trial: int, rng: np.random.Generator):
            base = self._space(trial)
            if base.s == 1.0:
                base = base.with_summability(3.0)
            src, tgt = base, base.with_summability(1.0 + (base.s - 1.0) * float(rng.uniform(0.0, 0.9)))
            lo = 0 if src.domain is IndexDomain.HALF_LINE else -5
            size = 5 - lo + 1
            entries = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
            T = FiniteSectionOperator(window=(lo, 5), entries=entries, src=src, tgt=tgt)
            restored = pitt_deconjugate(pitt_conjugate(T), src, tgt)
            error = float(np.max(np.abs(restored.entries - T.entries) / np.abs(T.entries)))
            if error <= rel:
                return None
            return {"src": src.to_dict(), "tgt": tgt.to_dict(), "max_rel_error": error}

        def norm_bracket(trial: int, rng: np.random.Generator):
            s = float(rng.uniform(1.0, 4.0))
            t = float(rng.uniform(1.0, 4.0))
            size = int(rng.integers(1, 9))
            entries = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
            A = FiniteSectionOperator(
                window=(0, size - 1), entries=entries, src=unweighted_space(s), tgt=unweighted_space(t)
            )
            lower = operator_norm_lower(A, probes=16, seed=trial)
            upper = operator_norm_upper(A)
            if lower <= upper * (1 + rel):
                return None
            return {"s": s, "t": t, "lower": lower, "upper": upper, "entries": [[z.real, z.imag] for z in entries.reshape(-1)]}

        return [
            ("isometry_preserves_norm", preserves_norm),
            ("isometry_round_trip", round_trip),
            ("pitt_conjugation_round_trip", pitt_round_trip),
            ("operator_norm_bracket", norm_bracket),
        ]
