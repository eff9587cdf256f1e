import pytest
from hypothesis import given, strategies as st

from cycleprod.perm_core import (Cycle, CycleType, PermError, Permutation, compose,
                                 compose_all, cycles_product, dcd_star, format_cycles,
                                 inverse, is_even, orbit_count, parse_cycle, parse_cycles,
                                 stats)


def perms(max_n=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(Permutation))


def test_compose_applies_right_factor_first():
    assert compose(parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)) == parse_cycles("(1 2 3)", 3)


def test_two_five_cycles_give_three_cycle():
    prod = cycles_product([parse_cycle("(1 3 2 4 5)"), parse_cycle("(1 3 5 4 2)")], 5)
    assert prod == parse_cycles("(1 2 3)", 5)


def test_compose_degree_mismatch():
    with pytest.raises(PermError):
        compose(Permutation.identity(3), Permutation.identity(4))


@given(perms())
def test_inverse_round_trip(p):
    e = Permutation.identity(p.degree)
    assert compose(p, inverse(p)) == e
    assert inverse(inverse(p)) == p


def test_inverse_of_three_cycle():
    assert inverse(parse_cycles("(1 2 3)")) == parse_cycles("(1 3 2)")


def test_dcd_star_examples():
    assert dcd_star(Permutation.identity(4)) == []
    assert [str(c) for c in dcd_star(Permutation([2, 1, 4, 5, 3, 6]))] == ["(1 2)", "(3 4 5)"]


def test_stats_examples():
    s = stats(parse_cycles("(1 2)(3 4 5)"))
    assert (s.m, s.c, s.counts) == (5, 2, {2: 1, 3: 1})
    assert (stats(Permutation.identity(3)).m, stats(Permutation.identity(3)).c) == (0, 0)
    assert stats(parse_cycles("(1 2 3 4 5 6 7)")).counts == {7: 1}


@pytest.mark.parametrize("text,even", [("(1 2 3)", True), ("(1 2)", False), ("(1 2)(3 4)", True)])
def test_parity(text, even):
    assert is_even(parse_cycles(text)) is even


@given(perms(), perms())
def test_sign_is_multiplicative(p, q):
    n = max(p.degree, q.degree)
    p, q = p.extend(n), q.extend(n)
    assert is_even(compose(p, q)) == (is_even(p) == is_even(q))


@given(perms())
def test_format_parse_round_trip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


def test_parse_cycles_contract():
    p = parse_cycles("(1 2 3)", 5)
    assert p.degree == 5 and p(4) == 4 and p(5) == 5
    assert parse_cycles("()", 3) == Permutation.identity(3)
    assert parse_cycles("(1, 2)(3,4)") == parse_cycles("(1 2)(3 4)")
    for bad in ["(1 2)(2 3)", "(1 2", "1 2", "(1 a)", "(0 1)"]:
        with pytest.raises(PermError):
            parse_cycles(bad)
    with pytest.raises(PermError):
        parse_cycles("(1 7)", 5)


def test_parse_cycle_keeps_orientation():
    assert parse_cycle("(3 1 2)").points == (1, 2, 3)
    assert parse_cycle("(1 3 2)").points == (1, 3, 2)


def test_cycle_validation():
    with pytest.raises(PermError):
        Cycle((1,))
    with pytest.raises(PermError):
        Cycle((1, 2, 1))
    assert Cycle((4, 2, 3)).points == (2, 3, 4)
    assert Cycle((1, 2, 3)).inverse() == Cycle((3, 2, 1))


def test_cycle_type():
    t = parse_cycles("(1 2)(3 4)(5 6 7)", 8).cycle_type()
    assert t.parts == (3, 2, 2) and str(t) == "3.2^2" and t.is_even() is True
    assert CycleType((2, 2), 4).representative() == parse_cycles("(1 2)(3 4)")
    with pytest.raises(PermError):
        CycleType((3, 3), 5)


def test_compose_all_order():
    a, b = parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)
    assert compose_all([a, b]) == compose(a, b)
    assert compose_all([], 3) == Permutation.identity(3)


def test_orbit_count_examples():
    assert orbit_count([Cycle((1, 2, 3)), Cycle((3, 4, 5))], range(1, 6)) == 1
    assert orbit_count([Cycle((1, 2)), Cycle((3, 4))], range(1, 5)) == 2
    assert orbit_count([Cycle((1, 2, 3, 4, 5))], range(1, 7)) == 2
    with pytest.raises(PermError):
        orbit_count([Cycle((1, 9))], range(1, 4))


def test_bad_image_list():
    with pytest.raises(PermError):
        Permutation([1, 1, 2])
