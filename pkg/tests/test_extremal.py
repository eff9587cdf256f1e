import pytest

from cycleprod import oracle
from cycleprod.bounds import n_k_l
from cycleprod.extremal import (ExtremalError, build_extremal, certify_nonmembership,
                                covered, decomposition_search, expected_slack)
from cycleprod.perm_core import is_even, parse_cycles, stats


@pytest.mark.parametrize("k,l,text,slack", [
    (2, 5, "(1 2)(3 4)(5 6)(7 8)", -2),
    (2, 4, "(1 2)(3 4)(5 6 7)", -2),
    (5, 5, "(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)(13 14)(15 16)", 1),
    (6, 2, "(1 2 3 4 5 6 7 8 9)", 2),
])
def test_published_shapes(k, l, text, slack):
    w = build_extremal(k, l)
    assert w.sigma == parse_cycles(text)
    assert w.certificate["slack"] == slack


def test_shapes_over_a_wide_range():
    for k in range(2, 30):
        for l in [2, 4, 5, 7, 8, 10, 11, 13, 14, 17]:
            if not covered(k, l):
                continue
            w = build_extremal(k, l)
            st = stats(w.sigma)
            assert w.n == n_k_l(k, l).value + 1 == st.m
            assert is_even(w.sigma)
            assert all(len(c) != l for c in w.sigma.cycles())
            assert k * l - st.m - st.c == expected_slack(k, l)


def test_slack_constants_by_case():
    # l = 1 (mod 3): k - 4; l = 2 (mod 3) depends on k mod 4
    assert build_extremal(6, 4).certificate["slack"] == 2
    assert build_extremal(6, 5).certificate["slack"] == 0
    assert build_extremal(8, 5).certificate["slack"] == 2
    assert build_extremal(7, 5).certificate["slack"] == 1
    assert build_extremal(9, 5).certificate["slack"] == 3


def test_uncovered_pairs_rejected():
    for k, l in [(2, 3), (4, 6), (9, 9)]:
        with pytest.raises(ExtremalError):
            build_extremal(k, l)
    with pytest.raises(ValueError):
        build_extremal(3, 4)


@pytest.mark.parametrize("k,l", [(2, 2), (2, 4), (2, 5), (2, 7), (3, 5), (4, 2), (4, 4),
                                 (4, 5), (6, 2)])
def test_desk_scale_certificates(k, l):
    w = build_extremal(k, l)
    v = certify_nonmembership(w)
    assert v.status == "UNCONDITIONAL"
    assert not oracle.is_member_oracle(w.sigma, k, l)


def test_negative_slack_needs_no_oracle():
    v = certify_nonmembership(build_extremal(3, 7))
    assert v.status == "UNCONDITIONAL" and v.numbers["m+c"] > v.numbers["kl"]


def test_premise_search_finds_nothing_for_long_cycle():
    w = build_extremal(6, 2)
    assert decomposition_search(w.sigma, 6, 2) == []


def test_beyond_ceiling_is_conditional():
    w = build_extremal(14, 5)
    v = certify_nonmembership(w)
    assert v.status == "CONDITIONAL" and w.n == 44
    assert v.numbers["slack"] == 4 and v.numbers["threshold"] == 10


def test_lowered_ceiling_is_conditional():
    v = certify_nonmembership(build_extremal(4, 5), ceiling=12)
    assert v.status == "CONDITIONAL"


@pytest.mark.slow
def test_five_five_unconditional():
    v = certify_nonmembership(build_extremal(5, 5))
    assert v.status == "UNCONDITIONAL" and v.numbers["oracle_member"] is False
