from __future__ import annotations

import json
import math

import numpy as np
import pytest

from core.errors import (
    DomainMismatch,
    HypothesisFailure,
    IndexOutsideDomain,
    InfimumNotPositive,
    InvalidExponents,
    InvalidSequenceData,
)
from core.weights import (
    IndexDomain,
    WeightFamily,
    load_weight_table,
    log_weight_at,
    log_weights,
    ratio_condition_check,
    weight_at,
    weight_infimum,
)

HALF = IndexDomain.HALF_LINE


def test_weight_values():
    assert weight_at(WeightFamily.constant(1.0), 7) == 1.0
    assert weight_at(WeightFamily.gibbs(1.0), 0) == 1.0
    assert weight_at(WeightFamily.gibbs(2.0), 3) == pytest.approx(math.exp(6.0), rel=1e-12)
    assert weight_at(WeightFamily.gibbs(2.0), 3) == pytest.approx(403.4288, rel=1e-7)
    assert weight_at(WeightFamily.polynomial(2.0), -3) == pytest.approx(16.0, rel=1e-12)


def test_log_weight_values():
    assert log_weight_at(WeightFamily.gibbs(1.0), 700) == 700.0
    assert log_weight_at(WeightFamily.constant(1.0), -5) == 0.0
    assert log_weight_at(WeightFamily.polynomial(2.0), 3) == pytest.approx(2 * math.log(4), rel=1e-14)


def test_gibbs_overflow_stays_in_log_domain():
    w = WeightFamily.gibbs(1.0)
    assert weight_at(w, 800) == math.inf
    assert log_weight_at(w, 800) == 800.0


def test_log_and_direct_paths_agree():
    rng = np.random.default_rng(3)
    families = [
        WeightFamily.constant(4.0),
        WeightFamily.polynomial(-1.5),
        WeightFamily.polynomial(2.0),
        WeightFamily.gibbs(0.7),
        WeightFamily.from_table({0: 1.0, 2: 3.5, 5: 0.25}, lower_bound=0.25, domain=HALF),
    ]
    for w in families:
        for m in rng.integers(0, 60, size=20).tolist():
            if w.tabulated(m) is None and w.table:
                continue
            direct = weight_at(w, m)
            assert direct > 0
            assert abs(math.exp(log_weight_at(w, m)) - direct) <= 1e-12 * direct


def test_vectorised_logs_match_scalar_path():
    w = WeightFamily.polynomial(2.0)
    indices = np.arange(-10, 11)
    expected = [log_weight_at(w, int(m)) for m in indices]
    assert np.allclose(log_weights(w, indices), expected, rtol=1e-15, atol=0)


def test_half_line_rejects_negative_index():
    with pytest.raises(IndexOutsideDomain):
        weight_at(WeightFamily.gibbs(1.0), -1)
    with pytest.raises(IndexOutsideDomain):
        log_weights(WeightFamily.constant(1.0, HALF), np.array([0, -2]))


def test_gibbs_only_on_half_line():
    with pytest.raises(HypothesisFailure):
        WeightFamily.gibbs(1.0).on(IndexDomain.FULL_LINE)
    assert WeightFamily.gibbs(1.0).domain is HALF


def test_infimum():
    assert weight_infimum(WeightFamily.gibbs(3.0)) == 1.0
    assert weight_infimum(WeightFamily.constant(4.0)) == 4.0
    assert weight_infimum(WeightFamily.polynomial(2.0)) == 1.0
    assert weight_infimum(WeightFamily.from_table({0: 2.0, 1: 3.0}, lower_bound=0.5)) == 0.5
    with pytest.raises(InfimumNotPositive):
        weight_infimum(WeightFamily.polynomial(-1.0))


def test_infimum_bounds_samples():
    for w in (WeightFamily.constant(4.0), WeightFamily.polynomial(0.5), WeightFamily.gibbs(2.0)):
        lower = weight_infimum(w)
        assert all(weight_at(w, m) >= lower for m in range(0, 40))


def test_table_validation():
    with pytest.raises(InvalidSequenceData):
        WeightFamily.from_table({0: 1.0, 1: 0.5}, lower_bound=1.0)
    with pytest.raises(InvalidSequenceData):
        WeightFamily.from_table({0: 1.0}, lower_bound=0.0)
    with pytest.raises(InvalidSequenceData):
        WeightFamily.from_table({0: -1.0}, lower_bound=0.1)
    with pytest.raises(InvalidSequenceData):
        WeightFamily.from_table({-1: 1.0}, lower_bound=0.1, domain=HALF)


def test_table_lookup_outside_table():
    w = WeightFamily.from_table({0: 1.0}, lower_bound=1.0)
    with pytest.raises(IndexOutsideDomain):
        weight_at(w, 4)


def test_load_weight_table_from_mapping_and_file(tmp_path):
    w = load_weight_table({"lower_bound": 0.5, "0": 1.0, "3": 2.0})
    assert weight_at(w, 3) == 2.0
    assert weight_infimum(w) == 0.5

    path = tmp_path / "weights.json"
    path.write_text(json.dumps({"lower_bound": 1.0, "0": 1.0, "1": 4.0}))
    from_file = load_weight_table(path, domain=HALF)
    assert from_file.domain is HALF
    assert weight_at(from_file, 1) == 4.0


def test_load_weight_table_rejects_bad_data():
    with pytest.raises(InvalidSequenceData):
        load_weight_table({"lower_bound": 0.5, "0": -1.0})
    with pytest.raises(InvalidSequenceData):
        load_weight_table({"0": 1.0})
    with pytest.raises(InvalidSequenceData):
        load_weight_table({"lower_bound": 2.0, "0": 1.0})


def test_ratio_condition_gibbs_pair_is_analytic():
    bounds = ratio_condition_check(WeightFamily.gibbs(1.0), WeightFamily.gibbs(0.5), 2.0, 1.0, (0, 100))
    assert (bounds.c1, bounds.c2) == (1.0, 1.0)
    assert bounds.analytic
    assert bounds.rigorous


def test_ratio_condition_constant_and_polynomial_pairs():
    c1, c2 = ratio_condition_check(WeightFamily.constant(1.0), WeightFamily.constant(1.0), 3.0, 2.0, (-10, 10))
    assert (c1, c2) == (1.0, 1.0)
    c1, c2 = ratio_condition_check(WeightFamily.polynomial(2.0), WeightFamily.polynomial(1.0), 2.0, 1.0, (0, 100))
    assert c1 == pytest.approx(1.0, rel=1e-12)
    assert c2 == pytest.approx(1.0, rel=1e-12)


def test_ratio_condition_window_empirical():
    bounds = ratio_condition_check(WeightFamily.constant(1.0), WeightFamily.polynomial(1.0), 2.0, 1.0, (-3, 3))
    assert not bounds.analytic
    assert bounds.c1 == pytest.approx(0.25, rel=1e-12)
    assert bounds.c2 == pytest.approx(1.0, rel=1e-12)
    assert bounds.window == (-3, 3)


def test_ratio_condition_errors():
    with pytest.raises(DomainMismatch):
        ratio_condition_check(WeightFamily.gibbs(1.0), WeightFamily.constant(1.0), 2.0, 1.0, (0, 10))
    with pytest.raises(InvalidExponents):
        ratio_condition_check(WeightFamily.constant(1.0), WeightFamily.constant(1.0), 1.0, 2.0, (0, 10))
    with pytest.raises(HypothesisFailure):
        ratio_condition_check(
            WeightFamily.constant(1.0, HALF), WeightFamily.constant(2.0, HALF), 2.0, 1.0, (-5, -1)
        )
