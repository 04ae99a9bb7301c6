"""The named check suites behind `sigma check`."""

import pytest

from sigmavect.suites import SUITES, SuiteError, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_default_seed(name):
    report = run_suite(name, seed=0)
    assert report["verdict"] == "PASS", report["failures"][:5]
    assert report["cases"] > 0
    assert report["suite"] == name


def test_suites_deterministic_given_seed():
    a = run_suite("basis", seed=5)
    b = run_suite("basis", seed=5)
    assert a == b


def test_second_seed():
    report = run_suite("hahn-ring", seed=2024)
    assert report["verdict"] == "PASS"


def test_unknown_suite():
    with pytest.raises(SuiteError):
        run_suite("definitely-not-a-suite")
