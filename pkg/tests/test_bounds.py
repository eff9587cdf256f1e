from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cycleprod.bounds import (BoundsError, bound_report, conjectured_range, hgl_upper_bound,
                              indecomposability_bound_check, legacy_value, n_k_l,
                              necessary_product_condition, ree_certificate_check,
                              small_cycle_estimate)
from cycleprod.perm_core import Cycle, parse_cycle, parse_cycles, stats


def feasible_kl(kmax=12, lmax=30):
    return st.tuples(st.integers(2, kmax), st.integers(2, lmax)).filter(
        lambda t: t[0] % 2 == 0 or t[1] % 2 == 1)


@pytest.mark.parametrize("k,l,value,rule", [
    (2, 2, 4, "TheoremB-l2"),
    (5, 5, 15, "TheoremA-l2mod3-k1mod4"),
    (6, 4, 14, "TheoremA-l1mod3"),
    (7, 5, 22, "TheoremA-l2mod3-kNot1mod4"),
    (4, 3, 9, "nk3"),
    (4, 6, 17, "div3-kEven"),
    (3, 9, 18, "div3-kOdd[l>=9,l odd]"),
])
def test_nkl_values(k, l, value, rule):
    case = n_k_l(k, l)
    assert (case.value, case.rule) == (value, rule)


def test_nkl_str():
    assert str(n_k_l(5, 5)) == "15 (TheoremA-l2mod3-k1mod4)"


@pytest.mark.parametrize("k,l", [(3, 4), (1, 5), (2, 1), (5, 2)])
def test_nkl_rejects(k, l):
    with pytest.raises(BoundsError):
        n_k_l(k, l)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_unified_formulas_match_legacy(k):
    for l in range(4, 101):
        if l % 3 == 0 or (k % 2 and l % 2 == 0):
            continue
        assert n_k_l(k, l).value == legacy_value(k, l), (k, l)


@given(feasible_kl())
def test_value_at_least_l(kl):
    k, l = kl
    assert n_k_l(k, l).value >= l


def test_nkl_below_general_bound_on_grid():
    for k in range(2, 13):
        for l in range(3, 10):
            if k % 2 and l % 2 == 0:
                continue
            assert n_k_l(k, l).value <= hgl_upper_bound(k, l), (k, l)


@given(st.integers(5, 40), st.integers(4, 60).filter(lambda l: l % 3))
def test_closed_form_gap_to_conjecture(k, l):
    if k % 2 and l % 2 == 0:
        return
    v = n_k_l(k, l).value
    low, _ = conjectured_range(k, l)
    assert v < low
    if l % 3 == 1:
        assert 3 * v == 2 * k * l - 2 * k + 6
    else:
        eps = 3 * v - (2 * k * l - k)
        assert eps in (0, 3) and (eps == 0) == (k % 4 == 1)


def test_conjectured_range_examples():
    assert conjectured_range(5, 5) == (16, 17)
    lo, hi = conjectured_range(2, 4)
    assert (lo, hi) == (5, 6) and lo <= n_k_l(2, 4).value <= hi
    assert conjectured_range(9, 5) == (30, 31) and n_k_l(9, 5).value == 27


@pytest.mark.parametrize("k,l,bound", [(2, 5, 7), (3, 9, 18), (5, 5, 17)])
def test_general_upper_bound(k, l, bound):
    assert hgl_upper_bound(k, l) == bound


def test_necessary_condition():
    eight = parse_cycles("(1 2)(3 4)(5 6)(7 8)")
    assert necessary_product_condition(eight, 2, 5).status == "FAIL"
    assert necessary_product_condition(parse_cycles("(1 2 3)", 5), 2, 5).status == "PASS"
    assert necessary_product_condition(parse_cycles("(1 2 3 4 5)(6 7)"), 2, 5).status == \
        "INAPPLICABLE"


def test_orbit_certificate_on_witnesses():
    v = ree_certificate_check(parse_cycles("(1 2 3)", 5),
                              [parse_cycle("(1 3 2 4 5)"), parse_cycle("(1 3 5 4 2)")])
    assert v.status == "PASS" and v.numbers["T"] == 1 and v.numbers["slack"] == 6
    sigma = parse_cycles("(1 2 3)(4 5 6)")
    v = ree_certificate_check(sigma, [parse_cycle("(2 5 3 6 4)"), parse_cycle("(1 4 2 5 3)")])
    assert v.ok and v.numbers["T"] == 1


def test_orbit_certificate_rejects_bad_input():
    with pytest.raises(BoundsError):
        ree_certificate_check(parse_cycles("(1 2 3)", 5), [Cycle((1, 2, 3, 4, 5))] * 2)
    with pytest.raises(BoundsError):
        ree_certificate_check(parse_cycles("(1 2 3)", 5), [Cycle((1, 2, 3)), Cycle((1, 2))])
    with pytest.raises(BoundsError):
        ree_certificate_check(parse_cycles("(1 2 3)", 5), [])


@pytest.mark.parametrize("k", [4, 6, 8, 10])
def test_long_cycle_fires(k):
    sigma = parse_cycles("(" + " ".join(map(str, range(1, k + 4))) + ")")
    v = indecomposability_bound_check(sigma, k, 2)
    assert v.status == "FIRES" and v.numbers["slack"] == k - 4


def test_fires_for_two_and_four_cycles():
    sigma = parse_cycles("(1 2)(3 4)(5 6)(7 8)(9 10)(11 12 13 14)")
    v = indecomposability_bound_check(sigma, 4, 5)
    assert v.status == "FIRES" and v.numbers["slack"] == 0


def test_indecomposability_gate():
    assert indecomposability_bound_check(parse_cycles("(1 2 3)"), 4, 3).status == "INAPPLICABLE"
    with pytest.raises(BoundsError):
        indecomposability_bound_check(parse_cycles("(1 2 3)"), 3, 5)
    with pytest.raises(BoundsError):
        indecomposability_bound_check(parse_cycles("(1 2 3)"), 5, 5, "even")


def test_bound_report_slack():
    r = bound_report(parse_cycles("(1 2)(3 4)(5 6)(7 8)"), 6, 5)
    assert r.slack == 30 - 8 - 4
    assert set(r.verdicts) == {"necessary", "indecomposable", "even-indecomposable"}


def test_small_cycle_estimate_examples():
    st6 = None
    e = small_cycle_estimate(st6, 3, 2, {3: Fraction(13, 3)}, 8, 19)
    assert e.bound == 5 and e.raw == Fraction(13, 3)
    assert small_cycle_estimate(None, 3, 2, {3: 0}, 8, 19).bound == 7
    e = small_cycle_estimate(None, 3, 2, {3: 0}, 0, 19)
    assert e.bound == 0 and e.clamped


def test_small_cycle_estimate_checks_inequality():
    s = stats(parse_cycles("(1 2)(3 4)(5 6 7)(8 9 10 11 12)"))
    assert small_cycle_estimate(s, 3, 2, {3: 1}, 4, 12).concrete_ok is True
    with pytest.raises(BoundsError):
        small_cycle_estimate(None, 4, 2, {3: 1}, 4, 12)
