import pytest

from spacewb import checks


def test_suite_names():
    assert set(checks.SUITES) == {"lemma2.1", "lemma2.2", "lemma2.3", "lemma2.5", "lemma2.6",
                                  "lemma2.7", "lemma2.8", "prop1.1", "savitch"}
    with pytest.raises(KeyError):
        checks.run_suite("nope")


def test_symmetrized_runs_start_at_accepted_inputs():
    r = checks.run_suite("lemma2.2", max_len=8, max_a=2)
    assert r.passed, r.failures


def test_pipeline_keeps_languages():
    r = checks.run_suite("lemma2.3")
    assert r.passed, r.failures


def test_basic_segments_project_to_positive_words():
    r = checks.run_suite("lemma2.8", max_len=14, slack=2)
    assert r.passed, r.failures
    assert r.metrics["even.segments"] > 0


def test_report_shape():
    r = checks.run_suite("lemma2.6", umax=1)
    d = r.as_dict()
    assert d["suite"] == "lemma2.6" and d["passed"] and d["cases"] == r.cases
    assert "seconds" in d["metrics"]
    assert r.summary().startswith("lemma2.6: PASS")
