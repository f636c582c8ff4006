from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import special

from core.errors import (
    EnvelopeNotSummable,
    EnvelopeViolated,
    HypothesisFailure,
    IndexOutsideDomain,
    InvalidSequenceData,
    NormOverflow,
    NotContinuous,
    ParameterMismatch,
)
from core.operators import (
    DecayEnvelope,
    FiniteSectionOperator,
    apply,
    compactness_witness,
    diagonal_norm,
    embedding_as_diagonal,
    envelope_tail,
    holder_conjugate,
    is_unweighted,
    isometry_apply,
    isometry_invert,
    operator_from_json,
    operator_norm_lower,
    operator_norm_upper,
    operator_to_json,
    pitt_conjugate,
    pitt_deconjugate,
    unweighted_space,
)
from core.spaces import SeqVector, SpaceParams, basis_norm, basis_vector, norm, random_vector, trial_rng, unweighted_norm
from core.weights import IndexDomain, WeightFamily


@pytest.fixture(scope="module")
def pitt_pair():
    w = WeightFamily.polynomial(1.0)
    return SpaceParams.create(1.0, 2.0, w), SpaceParams.create(1.0, 1.0, w)


def symbol_entry_fn(src, tgt, gamma=2.0):
    """T whose conjugate is diag((1+|m|)^-gamma)."""

    def entry(m, n):
        if m != n:
            return 0.0
        return (1.0 + abs(m)) ** (-gamma) * basis_norm(src, m) / basis_norm(tgt, m)

    return entry


def test_isometry_scales_basis_vectors():
    sp = SpaceParams.create(1.0, 2.0, WeightFamily.constant(1.0))
    image = isometry_apply(sp, basis_vector(3))
    assert image[3] == pytest.approx(math.sqrt(10.0), rel=1e-12)
    assert isometry_apply(sp, SeqVector.zero()).is_zero


def test_isometry_preserves_norms_and_inverts():
    for sp in [
        SpaceParams.create(1.0, 2.0, WeightFamily.polynomial(1.5)),
        SpaceParams.create(-0.5, 3.0, WeightFamily.constant(2.0)),
        SpaceParams.create(2.0, 1.0, WeightFamily.gibbs(0.3)),
    ]:
        window = (0, 40) if sp.domain is IndexDomain.HALF_LINE else (-40, 40)
        for trial in range(20):
            p = random_vector(trial_rng(1, trial), window, 8, sp.domain)
            q = isometry_apply(sp, p)
            assert unweighted_norm(q, sp.s) == pytest.approx(norm(sp, p), rel=1e-12)
            back = isometry_invert(sp, q)
            for m, value in p:
                assert back[m] == pytest.approx(value, rel=1e-12)


def test_isometry_rejects_indices_off_domain():
    sp = SpaceParams.create(1.0, 2.0, WeightFamily.gibbs(1.0))
    with pytest.raises(IndexOutsideDomain):
        isometry_apply(sp, basis_vector(-1))


def test_isometry_overflow_raises_and_tiny_entries_survive():
    sp = SpaceParams.create(0.0, 1.0, WeightFamily.gibbs(1.0))
    with pytest.raises(NormOverflow):
        isometry_apply(sp, basis_vector(1000))
    image = isometry_apply(sp, SeqVector(((800, 1e-300 + 0j),)))
    assert image[800].real == pytest.approx(math.exp(800 + math.log(1e-300)), rel=1e-12)
    assert image[800].imag == 0.0


def test_unweighted_space_helpers():
    assert is_unweighted(unweighted_space(2.0))
    assert is_unweighted(unweighted_space(1.0, IndexDomain.HALF_LINE))
    assert not is_unweighted(SpaceParams.create(1.0, 2.0, WeightFamily.constant(1.0)))


def test_pitt_conjugate_entries(pitt_pair):
    src, tgt = pitt_pair
    rng = np.random.default_rng(0)
    window = (-6, 6)
    entries = rng.standard_normal((13, 13)) + 1j * rng.standard_normal((13, 13))
    T = FiniteSectionOperator(window=window, entries=entries, src=src, tgt=tgt)
    C = pitt_conjugate(T)
    assert is_unweighted(C.src) and C.src.s == 2.0
    assert is_unweighted(C.tgt) and C.tgt.s == 1.0
    for m, n in [(-6, 2), (0, 0), (5, -3)]:
        expected = basis_norm(tgt, m) * T.entry(m, n) / basis_norm(src, n)
        assert C.entry(m, n) == pytest.approx(expected, rel=1e-12)

    back = pitt_deconjugate(C, src, tgt)
    assert np.allclose(back.entries, T.entries, rtol=1e-12, atol=0.0)
    assert back.src == src and back.tgt == tgt


def test_pitt_pair_validation(pitt_pair):
    src, tgt = pitt_pair
    T = FiniteSectionOperator.zeros((-2, 2), src, tgt)
    with pytest.raises(ParameterMismatch):
        pitt_conjugate(FiniteSectionOperator.zeros((-2, 2), src, tgt.with_order(0.0)))
    with pytest.raises(ParameterMismatch):
        pitt_conjugate(FiniteSectionOperator.zeros((-2, 2), tgt, src))
    with pytest.raises(ParameterMismatch):
        pitt_deconjugate(pitt_conjugate(T), src, tgt.with_summability(1.5))


def test_embedding_as_diagonal():
    w = WeightFamily.constant(1.0)
    src, tgt = SpaceParams.create(1.0, 2.0, w), SpaceParams.create(0.0, 2.0, w)
    D = embedding_as_diagonal(src, tgt, (-3, 3))
    assert D.is_diagonal()
    for m in range(-3, 4):
        assert D.entry(m, m).real == pytest.approx((1.0 + m * m) ** -0.5, rel=1e-12)
    identity = embedding_as_diagonal(src, src, (-3, 3))
    assert np.allclose(identity.entries, np.eye(7))

    with pytest.raises(NotContinuous):
        embedding_as_diagonal(tgt, src, (-3, 3))
    with pytest.raises(ParameterMismatch):
        embedding_as_diagonal(src, tgt.with_summability(3.0), (-3, 3))


def test_apply_drops_entries_outside_window():
    plain = unweighted_space(2.0)
    A = FiniteSectionOperator.diagonal([1.0, 2.0, 3.0], (-1, 1), plain, plain)
    p = SeqVector.from_mapping({-1: 1.0, 1: 1j, 7: 5.0})
    result = apply(A, p)
    assert result[-1] == 1.0
    assert result[0] == 0
    assert result[1] == 3j
    assert 7 not in result.support


def test_holder_conjugate():
    assert holder_conjugate(1.0) == math.inf
    assert holder_conjugate(2.0) == 2.0
    assert holder_conjugate(3.0) == pytest.approx(1.5)


def test_diagonal_norm_cases():
    d = np.array([1.0, 0.5])
    assert diagonal_norm(d, 2.0, 1.0) == pytest.approx(math.sqrt(1.25))
    assert diagonal_norm(d, 1.0, 2.0) == 1.0
    assert diagonal_norm(d, 2.0, 2.0) == 1.0
    assert diagonal_norm(np.array([]), 2.0, 1.0) == 0.0


def test_norm_bounds_bracket_diagonal_norm():
    window = (-20, 20)
    idx = np.arange(window[0], window[1] + 1)
    d = (1.0 + np.abs(idx)) ** -2.0
    A = FiniteSectionOperator.diagonal(d, window, unweighted_space(2.0), unweighted_space(1.0))
    exact = diagonal_norm(d, 2.0, 1.0)
    lower = operator_norm_lower(A, probes=200, seed=0)
    upper = operator_norm_upper(A)
    assert upper == pytest.approx(np.sum(d), rel=1e-12)
    assert lower <= exact * (1 + 1e-10)
    assert exact <= upper * (1 + 1e-10)


def test_norm_bounds_bracket_spectral_norm():
    rng = np.random.default_rng(4)
    entries = rng.standard_normal((9, 9))
    plain = unweighted_space(2.0)
    A = FiniteSectionOperator(window=(-4, 4), entries=entries, src=plain, tgt=plain)
    spectral = np.linalg.norm(entries, 2)
    assert operator_norm_lower(A, probes=100, seed=1) <= spectral * (1 + 1e-10)
    assert operator_norm_upper(A) == pytest.approx(np.linalg.norm(entries, "fro"), rel=1e-12)


def test_norm_bounds_require_unweighted_spaces(pitt_pair):
    src, tgt = pitt_pair
    T = FiniteSectionOperator.zeros((-2, 2), src, tgt)
    with pytest.raises(ParameterMismatch):
        operator_norm_upper(T)
    with pytest.raises(ParameterMismatch):
        operator_norm_lower(T, probes=1)
    with pytest.raises(ValueError):
        operator_norm_lower(pitt_conjugate(T), probes=0)


def test_witness_power_decay(pitt_pair):
    src, tgt = pitt_pair
    result = compactness_witness(symbol_entry_fn(src, tgt), DecayEnvelope.power(2.0), src, tgt, 0.01)
    assert result.n_eps == 199
    assert result.certified_error == pytest.approx(0.01, abs=1e-15)
    assert result.certified_error <= 0.01
    assert result.max_row_ratio == pytest.approx(1.0, rel=1e-10)

    # sum_{|m| > 199} (1+|m|)^-2 = 2 * sum_{j >= 201} j^-2
    true_tail = 2.0 * float(special.polygamma(1, 201))
    assert true_tail <= result.certified_error
    previous = envelope_tail(DecayEnvelope.power(2.0), result.n_eps - 1, 1.0)
    assert previous > 0.01

    errors = [bound for _, bound in result.trace]
    assert errors == sorted(errors, reverse=True)


def test_witness_half_line():
    w = WeightFamily.constant(1.0, IndexDomain.HALF_LINE)
    src, tgt = SpaceParams.create(1.0, 2.0, w), SpaceParams.create(1.0, 1.0, w)
    result = compactness_witness(symbol_entry_fn(src, tgt), DecayEnvelope.power(2.0), src, tgt, 0.01)
    assert result.n_eps == 99
    assert result.check_window == (0, 50)


def test_witness_exponential_is_minimal(pitt_pair):
    src, tgt = pitt_pair
    env = DecayEnvelope.exponential(1.0)

    def entry(m, n):
        return math.exp(-abs(m)) * basis_norm(src, m) / basis_norm(tgt, m) if m == n else 0.0

    result = compactness_witness(entry, env, src, tgt, 1e-3)
    assert result.n_eps == 8
    assert envelope_tail(env, 8, 1.0) <= 1e-3 < envelope_tail(env, 7, 1.0)


def test_witness_zero_operator(pitt_pair):
    src, tgt = pitt_pair
    result = compactness_witness(lambda m, n: 0.0, DecayEnvelope.zero(), src, tgt, 1e-6)
    assert result.n_eps == 0
    assert result.certified_error == 0.0


def test_witness_table_envelope(pitt_pair):
    src, tgt = pitt_pair
    values = {m: 0.5 ** abs(m) for m in range(-10, 11)}
    env = DecayEnvelope.from_table(values)

    def entry(m, n):
        return values.get(m, 0.0) * basis_norm(src, m) / basis_norm(tgt, m) if m == n else 0.0

    result = compactness_witness(entry, env, src, tgt, 0.01)
    expected = 2.0 * math.fsum(0.5**j for j in range(result.n_eps + 1, 11))
    assert result.certified_error == pytest.approx(expected, rel=1e-12)
    assert result.certified_error <= 0.01
    assert envelope_tail(env, result.n_eps - 1, 1.0) > 0.01


def test_witness_harmonic_envelope_diverges(pitt_pair):
    src, tgt = pitt_pair
    with pytest.raises(EnvelopeNotSummable):
        compactness_witness(symbol_entry_fn(src, tgt, 1.0), DecayEnvelope.power(1.0), src, tgt, 0.01)


def test_witness_detects_envelope_violation(pitt_pair):
    src, tgt = pitt_pair
    with pytest.raises(EnvelopeViolated):
        compactness_witness(symbol_entry_fn(src, tgt, 1.0), DecayEnvelope.power(2.0), src, tgt, 0.01)


def test_witness_needs_positive_epsilon(pitt_pair):
    src, tgt = pitt_pair
    with pytest.raises(HypothesisFailure):
        compactness_witness(symbol_entry_fn(src, tgt), DecayEnvelope.power(2.0), src, tgt, 0.0)


def test_operator_json_codec(pitt_pair):
    src, tgt = pitt_pair
    rng = np.random.default_rng(7)
    entries = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    T = FiniteSectionOperator(window=(-2, 2), entries=entries, src=src, tgt=tgt)
    decoded = operator_from_json(operator_to_json(T, indent=2))
    assert decoded.window == (-2, 2)
    assert np.array_equal(decoded.entries, T.entries)
    assert decoded.src == src and decoded.tgt == tgt


def test_operator_json_rejects_bad_documents():
    with pytest.raises(InvalidSequenceData):
        operator_from_json('{"window": [0, 1]}')
    with pytest.raises(InvalidSequenceData):
        operator_from_json(
            {
                "window": [0, 1],
                "src": {"k": 0, "s": 2, "w": {"kind": "constant"}},
                "tgt": {"k": 0, "s": 2, "w": {"kind": "constant"}},
                "entries": [[1.0, 0.0]],
            }
        )


def test_operator_construction_errors():
    plain = unweighted_space(2.0)
    with pytest.raises(InvalidSequenceData):
        FiniteSectionOperator(window=(3, 1), entries=np.zeros((1, 1)), src=plain, tgt=plain)
    with pytest.raises(InvalidSequenceData):
        FiniteSectionOperator(window=(0, 1), entries=np.zeros((3, 3)), src=plain, tgt=plain)
    with pytest.raises(InvalidSequenceData):
        FiniteSectionOperator(window=(0, 0), entries=np.array([[np.nan]]), src=plain, tgt=plain)
    half = unweighted_space(2.0, IndexDomain.HALF_LINE)
    with pytest.raises(IndexOutsideDomain):
        FiniteSectionOperator.zeros((-1, 2), half, half)


def test_operator_entries_are_read_only():
    plain = unweighted_space(2.0)
    A = FiniteSectionOperator.diagonal([1.0, 2.0], (0, 1), plain, plain)
    with pytest.raises(ValueError):
        A.entries[0, 0] = 5.0
    assert A.entry(5, 5) == 0j
