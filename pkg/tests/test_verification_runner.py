from __future__ import annotations

import json

import pytest

from core.errors import HypothesisFailure
from core.logging import EventLogger
from verification.runner import SUITES, VerificationRunner, VerifyConfig


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes(suite):
    results = VerificationRunner(VerifyConfig(suite=suite, trials=24, seed=0, window=20)).run()
    failed = [prop.to_dict() for prop in results.properties if not prop.ok]
    assert failed == []
    assert results.passed
    assert results.to_dict()["status"] == "pass"


def test_suite_property_names():
    runner = VerificationRunner(VerifyConfig(suite="isometry", trials=2))
    names = [prop.name for prop in runner.run().properties]
    assert names == [
        "isometry_preserves_norm",
        "isometry_round_trip",
        "pitt_conjugation_round_trip",
        "operator_norm_bracket",
    ]


def test_runs_are_deterministic():
    config = VerifyConfig(suite="norm-axioms", trials=16, seed=5, window=15)
    first = VerificationRunner(config).run().to_dict()
    second = VerificationRunner(config).run().to_dict()
    assert first == second


def test_workers_do_not_change_results():
    serial = VerificationRunner(VerifyConfig(suite="certificates", trials=12, seed=3, workers=1, window=20)).run()
    threaded = VerificationRunner(VerifyConfig(suite="certificates", trials=12, seed=3, workers=2, window=20)).run()
    assert serial.to_dict() == threaded.to_dict()


def test_invalid_configuration():
    with pytest.raises(ValueError):
        VerificationRunner(VerifyConfig(suite="nonsense"))
    with pytest.raises(ValueError):
        VerificationRunner(VerifyConfig(trials=0))
    for invalid in (dict(window=0), dict(workers=0), dict(max_series_terms=0), dict(rel_tol=0.0), dict(series_tol=-1.0)):
        with pytest.raises(ValueError):
            VerificationRunner(VerifyConfig(**invalid))


def test_failing_property_keeps_first_counterexample(tmp_path):
    log_file = tmp_path / "verify.jsonl"
    events = EventLogger(log_file=log_file, enable_console=False)
    runner = VerificationRunner(VerifyConfig(suite="norm-axioms", trials=6), event_logger=events)

    result = runner._run_property("late_failure", lambda trial, rng: {"x": trial} if trial >= 3 else None)
    assert result.passed == 3
    assert not result.ok
    assert result.counterexample == {"trial": 3, "x": 3}

    records = [json.loads(line) for line in log_file.read_text(encoding="utf-8").splitlines()]
    assert [r["event_type"] for r in records] == ["property_failure", "property_check"]
    assert records[0]["counterexample"] == {"trial": 3, "x": 3}


def test_library_errors_count_as_failures():
    runner = VerificationRunner(VerifyConfig(suite="norm-axioms", trials=2))

    def raises(trial, rng):
        raise HypothesisFailure("bad draw")

    result = runner._run_property("raises", raises)
    assert result.passed == 0
    assert result.counterexample == {"trial": 0, "error": "HypothesisFailure", "message": "bad draw"}


def test_results_document_shape():
    document = VerificationRunner(VerifyConfig(suite="monotonicity", trials=4, seed=9)).run().to_dict()
    assert document["command"] == "verify"
    assert document["suite"] == "monotonicity"
    assert document["seed"] == 9
    assert document["properties"][0]["name"] == "norm_nondecreasing_in_k"
    assert document["properties"][0]["counterexample"] is None
