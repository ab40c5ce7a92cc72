import json

import pytest

from chutensor.errors import PreconditionError
from chutensor.verify.fixtures import fixture
from chutensor.verify.suites import SUITES, VerificationReport, run_suite


def test_chu_suite_on_flat3():
    report = run_suite("chu", [fixture("FLAT3")])
    assert report.passed and report.summary["pass"] > 0


def test_tensor_order_includes_divergence_check():
    report = run_suite("tensor-order", [fixture("FLAT3"), fixture("FLAT3")])
    ids = [c.id for c in report.checks]
    assert "tensor-order/diagonal-triple-divergence/FLAT3xFLAT3" in ids
    assert report.passed


def test_regular_suite_sigma_checks():
    report = run_suite("regular", [fixture("FLAT4STAR"), fixture("FLAT4STAR")])
    sigma = [c for c in report.checks if "sigma" in c.id]
    assert len(sigma) == 4 and all(c.status == "pass" for c in sigma)


@pytest.mark.parametrize("name", SUITES)
def test_default_suites_pass(name):
    report = run_suite(name)
    assert report.passed, report.failures()[:2]
    json.dumps(report.to_dict())


def test_failures_carry_witness():
    report = VerificationReport("x")
    report.add("a", False)
    report.add("b", True, witness="ignored")
    assert report.failures()[0].witness == "unspecified"
    assert report.checks[1].witness is None
    assert report.summary == {"pass": 1, "fail": 1, "skip": 0}


def test_unknown_suite():
    with pytest.raises(PreconditionError):
        run_suite("nope")


def test_deterministic_ordering():
    first = run_suite("classify", [fixture("BOOL"), fixture("FLAT3")]).to_dict()
    second = run_suite("classify", [fixture("BOOL"), fixture("FLAT3")]).to_dict()
    assert first == second
