"""Closed-form n(k,l) and the inequality tests used to bound products of l-cycles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .perm_core import Cycle, Permutation, PermStats, cycles_product, orbit_count, stats


class BoundsError(ValueError):
    pass


def _div3(x: int) -> int:
    assert x % 3 == 0, f"{x} not divisible by 3"
    return x // 3


@dataclass(frozen=True)
class NklCase:
    k: int
    l: int
    value: int
    rule: str

    def __str__(self):
        return f"{self.value} ({self.rule})"


def check_kl(k: int, l: int) -> None:
    if k < 2 or l < 2:
        raise BoundsError(f"need k >= 2 and l >= 2, got k={k}, l={l}")
    if k % 2 == 1 and l % 2 == 0:
        raise BoundsError(
            f"k={k} odd with l={l} even: every product is an odd permutation, n(k,l) undefined")


def n_k_l(k: int, l: int) -> NklCase:
    check_kl(k, l)
    if l == 2:
        v, rule = k + 2, "TheoremB-l2"
    elif l == 3:
        v, rule = 2 * k + 1, "nk3"
    elif l % 3 == 0:
        if k % 2 == 0:
            v, rule = _div3(2 * k * l) + 1, "div3-kEven"
        else:
            # odd k forces odd l here, so l >= 9 holds automatically
            v, rule = _div3(2 * k * l), "div3-kOdd[l>=9,l odd]"
    elif l % 3 == 1:
        v, rule = _div3(2 * k * (l - 1)) + 2, "TheoremA-l1mod3"
    else:
        base = _div3(k * (2 * l - 1))
        if k % 4 == 1:
            v, rule = base, "TheoremA-l2mod3-k1mod4"
        else:
            v, rule = base + 1, "TheoremA-l2mod3-kNot1mod4"
    case = NklCase(k, l, v, rule)
    assert case.value >= l
    return case


def legacy_value(k: int, l: int) -> int:
    """The older closed forms for k = 2, 3, 4 (l > 2 unless noted)."""
    check_kl(k, l)
    if k == 2:
        return 4 if l == 2 else (4 * l) // 3 + 1
    if k == 3:
        return 7 if l == 3 else 2 * l
    if k == 4:
        if l == 2 or l % 3 == 0:
            return (8 * l) // 3 + 1
        return (8 * l) // 3
    raise BoundsError("legacy formulas exist only for k in {2, 3, 4}")


def conjectured_range(k: int, l: int) -> tuple[int, int]:
    if k < 2 or l < 3:
        raise BoundsError("conjectured range needs k >= 2, l >= 3")
    low = (2 * k * l) // 3
    return low, low + 1


def hgl_upper_bound(k: int, l: int) -> int:
    if l <= 2:
        raise BoundsError("bound stated for l > 2")
    check_kl(k, l)
    n1 = (2 * k * l) // 3
    delta = Fraction(2 * k * l, 3) - n1
    r = n1 % 4
    if r == 3:
        return n1
    if r == 2 and l > 3 and delta in (0, Fraction(1, 3)):
        return n1
    return n1 + 1


# -- certificates -----------------------------------------------------------

@dataclass
class Verdict:
    """Outcome of a single inequality test; ``status`` is PASS, FAIL,
    FIRES (conditional certificate applies), QUIET, or INAPPLICABLE."""

    status: str
    reason: str
    numbers: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("PASS", "QUIET")

    def as_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason, **self.numbers}


@dataclass
class BoundReport:
    kl: int
    m: int
    c: int
    slack: int
    thresholds: dict
    verdicts: dict

    def __post_init__(self):
        assert self.slack == self.kl - self.m - self.c


def has_l_part(sigma: Permutation, l: int) -> bool:
    return any(len(c) == l for c in sigma.cycles())


def slack(sigma: Permutation, k: int, l: int) -> int:
    s = stats(sigma)
    return k * l - s.m - s.c


def necessary_product_condition(sigma: Permutation, k: int, l: int) -> Verdict:
    s = stats(sigma)
    nums = {"m": s.m, "c": s.c, "m+c": s.m + s.c, "kl": k * l}
    if has_l_part(sigma, l):
        return Verdict("INAPPLICABLE", f"sigma has an {l}-cycle in its decomposition", nums)
    if s.m + s.c <= k * l:
        return Verdict("PASS", "m + c <= kl", nums)
    return Verdict("FAIL", f"m + c = {s.m + s.c} > kl = {k * l}: no product of {k} {l}-cycles",
                   nums)


def ree_certificate_check(sigma: Permutation, factors: Sequence[Cycle]) -> Verdict:
    """Check kl - m - c >= k - 2T for a witness whose factors cover supp(sigma)."""
    if not factors:
        raise BoundsError("empty factor list")
    lens = {len(f) for f in factors}
    if len(lens) != 1:
        raise BoundsError(f"factors have mixed lengths {sorted(lens)}")
    l = lens.pop()
    k = len(factors)
    n = sigma.degree
    if cycles_product(factors, n) != sigma:
        raise BoundsError("product of factors does not equal sigma")
    cover = set().union(*(f.support for f in factors))
    supp = sigma.support
    if not cover >= supp:
        raise BoundsError("factors do not cover the support of sigma")
    # points moved by some factor but fixed by sigma are carried along:
    # T is counted on the union, and m, c include them as 1-cycles.
    t = orbit_count(factors, cover)
    s = stats(sigma)
    extra = len(cover - supp)
    lhs = k * l - s.m - s.c - 2 * extra
    rhs = k - 2 * t
    nums = {"k": k, "l": l, "m": s.m, "c": s.c, "T": t, "extra_points": extra,
            "slack": k * l - s.m - s.c, "lhs": lhs, "rhs": rhs}
    if lhs >= rhs:
        return Verdict("PASS", "kl - m - c >= k - 2T", nums)
    return Verdict("FAIL", "witness violates the orbit inequality", nums)


def indecomposability_bound_check(sigma: Permutation, k: int, l: int,
                                  mode: str = "general") -> Verdict:
    if mode not in ("general", "even"):
        raise BoundsError(f"unknown mode {mode!r}")
    if k < 4:
        raise BoundsError("needs k >= 4")
    if mode == "even" and k % 2:
        raise BoundsError("even mode needs k even")
    s = stats(sigma)
    sl = k * l - s.m - s.c
    thr = k - 2 if mode == "general" else k - 4
    nums = {"kl": k * l, "m": s.m, "c": s.c, "slack": sl, "threshold": thr}
    if has_l_part(sigma, l):
        return Verdict("INAPPLICABLE", f"sigma has an {l}-cycle in its decomposition", nums)
    word = "k-indecomposable" if mode == "general" else "even-k-indecomposable"
    if sl < thr:
        return Verdict("FIRES", f"slack {sl} < {thr}: if sigma is {word} then it is not a "
                       f"product of {k} {l}-cycles", nums)
    return Verdict("QUIET", f"slack {sl} >= {thr}", nums)


def bound_report(sigma: Permutation, k: int, l: int, factors: Sequence[Cycle] | None = None
                 ) -> BoundReport:
    s = stats(sigma)
    thresholds = {"k-2": k - 2, "k-4": k - 4}
    verdicts = {"necessary": necessary_product_condition(sigma, k, l)}
    if k >= 4:
        verdicts["indecomposable"] = indecomposability_bound_check(sigma, k, l, "general")
        if k % 2 == 0:
            verdicts["even-indecomposable"] = indecomposability_bound_check(sigma, k, l, "even")
    if factors:
        v = ree_certificate_check(sigma, factors)
        thresholds["k-2T"] = v.numbers["rhs"]
        verdicts["ree"] = v
    return BoundReport(k * l, s.m, s.c, k * l - s.m - s.c, thresholds, verdicts)


def cycle_inequality_holds(st: PermStats, i: int) -> bool:
    """2n_2 + ... + i n_i + (i+1)(c - n_2 - ... - n_i) <= m."""
    small = sum(st.n(t) for t in range(2, i + 1))
    lhs = sum(t * st.n(t) for t in range(2, i + 1)) + (i + 1) * (st.c - small)
    return lhs <= st.m


@dataclass
class SmallCycleEstimate:
    j: int
    bound: int
    raw: Fraction
    clamped: bool
    concrete_ok: bool | None


def small_cycle_estimate(st: PermStats | None, i: int, j: int, caps: dict,
                         floor_c: int, ceil_m: int) -> SmallCycleEstimate:
    """Least n_j forced by c >= floor_c, m <= ceil_m and n_t <= caps[t] for t != j.

    ``caps`` values may be Fractions; the bound is rounded up. If ``st`` is
    given, the per-length inequality is also checked on it.
    """
    if not 2 <= j <= i:
        raise BoundsError("need 2 <= j <= i")
    missing = [t for t in range(2, i + 1) if t != j and t not in caps]
    if missing:
        raise BoundsError(f"missing caps for lengths {missing}")
    rhs = Fraction((i + 1) * floor_c - ceil_m)
    for t in range(2, i + 1):
        if t != j:
            rhs -= (i + 1 - t) * Fraction(caps[t])
    raw = rhs / (i - j + 1)
    clamped = raw < 0
    bound = 0 if clamped else -((-raw.numerator) // raw.denominator)
    ok = None
    if st is not None:
        ok = cycle_inequality_holds(st, i)
    return SmallCycleEstimate(j, bound, raw, clamped, ok)
