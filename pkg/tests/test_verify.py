"""Contract of the bundled verification harness."""

import json

import pytest

from filiform_ce import DomainError, MANIFEST, verify_all


def test_manifest_is_complete_and_sorted():
    assert len(MANIFEST) == 32
    assert list(MANIFEST) == sorted(MANIFEST)
    assert len(set(MANIFEST)) == len(MANIFEST)


def test_verify_all_passes_small():
    report = verify_all(seed=5, trials=3)
    assert report.passed
    assert [c.check_id for c in report.checks] == list(MANIFEST)
    assert all(c.passed for c in report.checks)
    assert report.failures() == []


def test_verify_reports_are_deterministic():
    a = verify_all(seed=9, trials=2).to_json()
    b = verify_all(seed=9, trials=2).to_json()
    assert a == b
    c = verify_all(seed=10, trials=2).to_json()
    assert c != a


def test_report_json_shape():
    report = verify_all(seed=3, trials=1)
    payload = json.loads(report.to_json())
    assert payload["seed"] == 3
    assert payload["trials"] == 1
    assert payload["summary"] == {"passed": 32, "total": 32}
    assert {c["check_id"] for c in payload["checks"]} == set(MANIFEST)


def test_report_text_form():
    report = verify_all(seed=3, trials=1)
    text = report.to_text()
    assert "passed 32/32" in text
    for check_id in MANIFEST:
        assert check_id in text


def test_corrupted_signs_are_caught():
    # flipping the second-row sign breaks the identity; exactly the checks
    # that recompute the constraint system or residual must go red
    report = verify_all(seed=1, trials=2, sign_table={2: 1})
    failed = {c.check_id for c in report.failures()}
    assert "leibniz-validity" in failed
    assert "constraint-reduction" in failed
    notes = {c.check_id: c.notes for c in report.failures()}
    assert "(0, 1, 3)" in notes["leibniz-validity"]


def test_trials_must_be_positive():
    with pytest.raises(DomainError):
        verify_all(trials=0)
