"""Even permutations just above n(k,l) that are not products of k l-cycles."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from . import oracle
from .bounds import (Verdict, check_kl, indecomposability_bound_check, n_k_l,
                     necessary_product_condition)
from .perm_core import Permutation, is_even, stats


class ExtremalError(ValueError):
    pass


@dataclass
class ExtremalWitness:
    sigma: Permutation
    n: int
    k: int
    l: int
    shape: str
    certificate: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"schema": "cycleprod.extremal/1", "target": str(self.sigma), "k": self.k,
                "l": self.l, "n": self.n, "shape": self.shape, "member": False,
                "certificate": self.certificate}


def _layout(n: int, twos: int, other: int | None) -> Permutation:
    """2-cycles (1 2)(3 4)... then the exceptional cycle on the highest points."""
    cyc = [(2 * i + 1, 2 * i + 2) for i in range(twos)]
    if other:
        cyc.append(tuple(range(n - other + 1, n + 1)))
    return Permutation.from_cycles(n, cyc)


def expected_slack(k: int, l: int) -> int:
    """kl - m - c for the shape placed at degree n(k,l) + 1."""
    if l == 2:
        return k - 4
    if l % 3 == 1:
        return k - 4
    if k % 4 == 2:
        return k // 2 - 3
    if k % 4 == 0:
        return k // 2 - 2
    if k % 4 == 3:
        return (k - 5) // 2
    return (k - 3) // 2


def covered(k: int, l: int) -> bool:
    try:
        check_kl(k, l)
    except ValueError:
        return False
    if l == 2:
        return k % 2 == 0
    return l > 3 and l % 3 != 0


def build_extremal(k: int, l: int) -> ExtremalWitness:
    check_kl(k, l)
    if not covered(k, l):
        raise ExtremalError(f"no counterexample family for k={k}, l={l}")
    N = n_k_l(k, l).value + 1
    if l == 2:
        sigma = Permutation.from_cycles(N, [tuple(range(1, N + 1))])
        shape = f"single-{N}-cycle"
    elif l % 3 == 1:
        sigma = _layout(N, (N - 3) // 2, 3)
        shape = "2-cycles+one-3-cycle"
    elif k % 4 == 2:
        sigma = _layout(N, N // 2, None)
        shape = "all-2-cycles"
    elif k % 4 == 0:
        sigma = _layout(N, N // 2 - 2, 4)
        shape = "2-cycles+one-4-cycle"
    elif k % 4 == 3:
        sigma = _layout(N, (N - 3) // 2, 3)
        shape = "2-cycles+one-3-cycle"
    else:
        sigma = _layout(N, N // 2, None)
        shape = "all-2-cycles"
    assert sigma.degree == N and stats(sigma).m == N
    if not is_even(sigma):
        raise AssertionError(f"constructed {shape} is odd")
    st = stats(sigma)
    sl = k * l - st.m - st.c
    assert sl == expected_slack(k, l), (k, l, sl)
    mode = _mode(k, l)
    cert = {"kl": k * l, "m": st.m, "c": st.c, "slack": sl, "mode": mode,
            "threshold": _threshold(k, mode)}
    return ExtremalWitness(sigma, N, k, l, shape, cert)


def _mode(k: int, l: int) -> str:
    if k < 4:
        return "necessary"
    if k >= 6 and k % 2 == 0 and l > 3 and l % 3 == 2:
        return "even"
    return "general"


def _threshold(k: int, mode: str) -> int:
    return {"necessary": 0, "general": k - 2, "even": k - 4}[mode]


def _splits(parts: tuple):
    """Unordered splits of a multiset into two non-empty sub-multisets."""
    cnt = Counter(parts)
    keys = sorted(cnt)
    seen = set()
    for choice in itertools.product(*(range(cnt[p] + 1) for p in keys)):
        left = tuple(sorted((p for p, a in zip(keys, choice) for _ in range(a)), reverse=True))
        right = tuple(sorted((p for p, a in zip(keys, choice) for _ in range(cnt[p] - a)),
                             reverse=True))
        if not left or not right:
            continue
        key = tuple(sorted((left, right)))
        if key not in seen:
            seen.add(key)
            yield left, right


def decomposition_search(sigma: Permutation, k: int, l: int, mode: str = "general",
                         ceiling: int = oracle.DEFAULT_CEILING) -> list:
    """All (rho, tau, k') disjoint splits with both halves reachable; empty means
    the indecomposability premise holds."""
    n = sigma.degree
    rt = oracle.class_power_types(n, l, k, ceiling)
    ks = range(2, k - 1) if mode == "general" else range(2, k - 1, 2)
    hits = []
    for left, right in _splits(oracle.type_of(sigma)):
        for k1 in ks:
            if left in rt.level(k1) and right in rt.level(k - k1):
                hits.append((left, right, k1))
    return hits


def certify_nonmembership(w: ExtremalWitness, ceiling: int = oracle.DEFAULT_CEILING) -> Verdict:
    sigma, k, l = w.sigma, w.k, w.l
    if not isinstance(sigma, Permutation) or sigma.degree != w.n:
        raise ExtremalError("malformed witness")
    mode = w.certificate.get("mode", _mode(k, l))
    if mode == "necessary":
        step = necessary_product_condition(sigma, k, l)
        if step.status != "FAIL":
            raise ExtremalError(f"slack is not negative: {step.numbers}")
        return Verdict("UNCONDITIONAL", "m + c > kl, so no product of this length exists",
                       {**step.numbers, "slack": w.certificate["slack"]})
    step = indecomposability_bound_check(sigma, k, l, mode)
    if step.status != "FIRES":
        raise ExtremalError(f"slack does not fall below the threshold: {step.numbers}")
    nums = dict(step.numbers)
    nums["mode"] = mode
    if w.n > ceiling:
        return Verdict("CONDITIONAL",
                       f"{step.reason}; indecomposability rests on the induction over k "
                       f"(degree {w.n} above oracle ceiling {ceiling})", nums)
    hits = decomposition_search(sigma, k, l, mode, ceiling)
    nums["decompositions_found"] = len(hits)
    if hits:
        return Verdict("FAIL", "a disjoint split into reachable halves exists", nums)
    member = oracle.is_member_oracle(sigma, k, l, ceiling=ceiling)
    nums["oracle_member"] = member
    if member:
        return Verdict("FAIL", "oracle finds sigma reachable", nums)
    word = "k-indecomposable" if mode == "general" else "even-k-indecomposable"
    return Verdict("UNCONDITIONAL", f"{step.reason}; oracle confirms sigma is {word} and "
                   "not reachable", nums)
