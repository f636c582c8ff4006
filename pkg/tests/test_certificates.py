from __future__ import annotations

import math

import numpy as np
import pytest

from core.embeddings import (
    CompactnessCertificate,
    Theorem,
    certificate_tail_norm,
    certify_theorem1,
    certify_theorem1b,
    certify_theorem2,
    tail_rank_theorem1,
    tail_rank_theorem2,
)
from core.errors import HypothesisFailure, NotStrictlySmoother, SeriesDiverges
from core.spaces import SpaceParams, basis_norm, basis_vector, sphere_sample, trial_rng
from core.weights import IndexDomain, WeightFamily

FULL_LINE_SUM = math.pi / math.tanh(math.pi)


def scan_tail_rank(gap, s, epsilon, kappa):
    m = 0
    while (1.0 + m**s) ** (-gap) > (epsilon / (2.0 * kappa)) ** s:
        m += 1
    return m


@pytest.fixture(scope="module")
def t1_certificate():
    return certify_theorem1(0.0, 1.0, 2.0, WeightFamily.constant(1.0), 0.2, 1.0)


def test_tail_rank_examples():
    assert tail_rank_theorem1(0.0, 1.0, 2.0, 0.2, 1.0) == 10
    assert tail_rank_theorem1(1.0, 3.0, 1.0, 0.02, 1.0) == 9
    assert tail_rank_theorem1(0.0, 0.5, 3.0, 2.0, 1.0) == 0
    assert tail_rank_theorem1(-1.0, 1.0, 2.0, 5.0, 1.0) == 0


def test_tail_rank_needs_strictly_smoother_source():
    with pytest.raises(NotStrictlySmoother):
        tail_rank_theorem1(1.0, 1.0, 2.0, 0.2, 1.0)
    with pytest.raises(NotStrictlySmoother):
        certify_theorem1(2.0, 1.0, 2.0, WeightFamily.constant(1.0), 0.2, 1.0)


def test_tail_rank_rejects_nonpositive_radii():
    with pytest.raises(HypothesisFailure):
        tail_rank_theorem1(0.0, 1.0, 2.0, 0.0, 1.0)
    with pytest.raises(HypothesisFailure):
        tail_rank_theorem1(0.0, 1.0, 2.0, 0.2, -1.0)


def test_tail_rank_matches_linear_scan():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        gap = rng.uniform(0.5, 3.0)
        s = rng.uniform(1.0, 4.0)
        kappa = rng.uniform(0.5, 3.0)
        epsilon = 2.0 * kappa / rng.uniform(1.0, 50.0)
        k = rng.uniform(-2.0, 2.0)
        assert tail_rank_theorem1(k, k + gap, s, epsilon, kappa) == scan_tail_rank(gap, s, epsilon, kappa)


def test_certificate_dimensions(t1_certificate):
    assert t1_certificate.theorem is Theorem.T1A
    assert t1_certificate.m_star == 10
    assert t1_certificate.subspace_dim == 21
    assert t1_certificate.basis_window == (-10, 10)
    assert t1_certificate.guaranteed_tail == pytest.approx(0.1)

    half = certify_theorem1(0.0, 1.0, 2.0, WeightFamily.constant(1.0, IndexDomain.HALF_LINE), 0.2, 1.0)
    assert half.m_star == 10
    assert half.subspace_dim == 10

    zero = certify_theorem1(0.0, 1.0, 2.0, WeightFamily.constant(1.0), 3.0, 1.0)
    assert zero.m_star == 0
    assert zero.subspace_dim == 0


def test_certificate_rejects_inconsistent_dimension():
    with pytest.raises(HypothesisFailure):
        CompactnessCertificate(theorem=Theorem.T1A, m_star=3, subspace_dim=3, epsilon=0.1, kappa=1.0)


def test_certificate_schema(t1_certificate):
    assert t1_certificate.to_dict() == {
        "theorem": "T1a",
        "m_star": 10,
        "subspace_dim": 21,
        "epsilon": 0.2,
        "kappa": 1.0,
        "constant": 1.0,
        "rigorous": True,
    }


def test_certificate_sound_on_sphere_samples(t1_certificate):
    w = WeightFamily.constant(1.0)
    src = SpaceParams.create(1.0, 2.0, w)
    tgt = SpaceParams.create(0.0, 2.0, w)
    worst = 0.0
    for trial in range(1000):
        p = sphere_sample(src, 1.0, trial_rng(7, trial), (-40, 40), 12)
        worst = max(worst, certificate_tail_norm(t1_certificate, tgt, p))
    assert worst <= 0.1 + 1e-12


def test_certificate_single_basis_vector_bound(t1_certificate):
    w = WeightFamily.constant(1.0)
    src = SpaceParams.create(1.0, 2.0, w)
    tgt = SpaceParams.create(0.0, 2.0, w)
    for m in (10, -10, 25, 300):
        p = basis_vector(m).scale(1.0 / basis_norm(src, m))
        expected = (1.0 + abs(m) ** 2) ** (-0.5)
        assert certificate_tail_norm(t1_certificate, tgt, p) == pytest.approx(expected, rel=1e-12)
        assert certificate_tail_norm(t1_certificate, tgt, p) <= 0.1 + 1e-12
    inside = basis_vector(9).scale(5.0)
    assert certificate_tail_norm(t1_certificate, tgt, inside) == 0.0


def test_theorem1b_certificate():
    w = WeightFamily.constant(4.0)
    cert = certify_theorem1b(0.0, 1.0, 2.0, 1.0, w, 0.2, 1.0)
    assert cert.theorem is Theorem.T1B
    assert cert.constant == pytest.approx(0.5)
    assert cert.m_star == 4

    src = SpaceParams.create(1.0, 1.0, w)
    tgt = SpaceParams.create(0.0, 2.0, w)
    for trial in range(300):
        p = sphere_sample(src, 1.0, trial_rng(5, trial), (-30, 30), 10)
        assert certificate_tail_norm(cert, tgt, p) <= 0.1 + 1e-12


def test_theorem1b_requires_nonnegative_order():
    with pytest.raises(HypothesisFailure):
        certify_theorem1b(-1.0, 1.0, 2.0, 1.0, WeightFamily.constant(1.0), 0.2, 1.0)


def test_tail_rank_theorem2_matches_closed_form_oracle():
    # threshold (eps c1^(1/t) / (2 kappa))^r = 0.01 with eps = 0.2, r = 2
    m_star = tail_rank_theorem2(1.0, 2.0, 1.0, 1.0, 0.2, 1.0)

    def true_tail(M):
        partial = 2.0 * math.fsum(1.0 / (1.0 + m * m) for m in range(M)) - 1.0 if M > 0 else 0.0
        return FULL_LINE_SUM - partial

    oracle = next(M for M in range(1000) if true_tail(M) <= 0.01)
    assert oracle == 201
    assert m_star == oracle


def test_tail_rank_theorem2_huge_epsilon_is_zero():
    assert tail_rank_theorem2(1.0, 2.0, 1.0, 1.0, 100.0, 1.0) == 0


def test_tail_rank_theorem2_monotone_in_kappa():
    ranks = [tail_rank_theorem2(1.0, 2.0, 1.0, 1.0, 0.2, kappa) for kappa in (0.5, 1.0, 2.0, 4.0)]
    assert ranks == sorted(ranks)


def test_tail_rank_theorem2_divergent_series():
    with pytest.raises(SeriesDiverges):
        tail_rank_theorem2(0.4, 2.0, 1.0, 1.0, 0.2, 1.0)


def test_certify_theorem2_gibbs():
    cert = certify_theorem2(1.0, 2.0, 1.0, WeightFamily.gibbs(1.0), WeightFamily.gibbs(0.5), 0.2, 1.0)
    assert cert.theorem is Theorem.T2
    assert cert.rigorous
    assert cert.subspace_dim == cert.m_star
    assert cert.constant == pytest.approx(1.44107, abs=1e-5)

    src = SpaceParams.create(1.0, 2.0, WeightFamily.gibbs(1.0))
    tgt = SpaceParams.create(0.0, 1.0, WeightFamily.gibbs(0.5))
    window = (0, max(50, 2 * cert.m_star))
    for trial in range(300):
        p = sphere_sample(src, 1.0, trial_rng(9, trial), window, 12)
        assert certificate_tail_norm(cert, tgt, p) <= 0.1 + 1e-12
