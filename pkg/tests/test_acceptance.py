"""One printed PASS/FAIL line per acceptance criterion."""

import pytest

from cycleprod import acceptance


@pytest.fixture
def report(capsys):
    def emit(res):
        with capsys.disabled():
            print("\n" + res.line())
            for f in res.failures:
                print("   ", f)
        assert res.passed, res.failures
    return emit


def test_criterion_1_formula_grid(report):
    report(acceptance.check_formula_grid())


@pytest.mark.slow
def test_criterion_2_degree_16(report):
    report(acceptance.check_large_case())


def test_criterion_3_decomposer_grid(report):
    report(acceptance.check_decomposer_grid())


def test_criterion_4_two_cycle_theorem(report):
    report(acceptance.check_two_cycle_theorem())


def test_criterion_5_extremal(report):
    report(acceptance.check_extremal())


def test_criterion_6_conjecture_scan(report):
    report(acceptance.check_conjecture_scan())


def test_criterion_7_properties(report):
    report(acceptance.check_properties(seed=20261016))
