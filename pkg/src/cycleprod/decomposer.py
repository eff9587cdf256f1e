"""Write an even permutation as a product of k l-cycles, with a checked witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import oracle
from .bounds import BoundsError, check_kl, n_k_l, ree_certificate_check
from .perm_core import (Cycle, Permutation, compose, cycles_product, inverse, stats,
                        type_rep_cycles)


class DecomposeError(ValueError):
    """Input outside the domain of the requested construction."""


class HypothesisError(DecomposeError):
    pass


# -- data --------------------------------------------------------------------

@dataclass
class Witness:
    factors: list
    target: Permutation
    l: int
    method: str = ""

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def n(self) -> int:
        return self.target.degree

    def validate(self) -> None:
        if any(len(f) != self.l for f in self.factors):
            raise AssertionError("witness has a factor of the wrong length")
        if cycles_product(self.factors, self.n) != self.target:
            raise AssertionError("witness product differs from target")

    def as_dict(self) -> dict:
        return {"schema": "cycleprod.witness/1", "target": str(self.target),
                "k": self.k, "l": self.l, "n": self.n,
                "factors": [str(f) for f in self.factors], "validated": True}


@dataclass
class TwoCycleFeasibility:
    l1: int
    l2: int
    s: int | None
    feasible: bool
    reason: str


@dataclass
class SplitPlan:
    block: list
    k1: int
    k2: int
    epsilon: int
    M: int
    alpha: int | None
    shape: str
    rest: list = field(default_factory=list)

    @property
    def block_support(self) -> int:
        return sum(len(c) for c in self.block)


# -- small helpers -------------------------------------------------------------

def _perm(n: int, cycles) -> Permutation:
    return Permutation.from_cycles(n, cycles)


def _single_cycle(p: Permutation) -> Cycle:
    cyc = p.cycles()
    if len(cyc) != 1:
        raise AssertionError(f"expected one cycle, got {p}")
    return cyc[0]


def _tr(n, a, b) -> Permutation:
    return _perm(n, [(a, b)])


def _chain_len(a: int, l: int) -> int:
    return l + (a - 1) * (l - 1)


def _power(c: Cycle, e: int, n: int) -> Cycle:
    pts = c.points
    L = len(pts)
    e %= L
    img = {pts[i]: pts[(i + e) % L] for i in range(L)}
    start = pts[0]
    seq, x = [start], img[start]
    while x != start:
        seq.append(x)
        x = img[x]
    if len(seq) != L:
        raise AssertionError("power is not a full cycle")
    return Cycle(tuple(seq))


# -- two cycles ----------------------------------------------------------------

def two_cycle_feasible(sigma: Permutation, l1: int, l2: int) -> TwoCycleFeasibility:
    if not l1 >= l2 >= 2:
        raise DecomposeError("need l1 >= l2 >= 2")
    st = stats(sigma)
    parts = sorted((len(c) for c in sigma.cycles()), reverse=True)
    if st.c == 2 and parts == [l1, l2] and l1 + l2 == st.m:
        return TwoCycleFeasibility(l1, l2, None, True, "sigma is the disjoint product")
    d = l1 + l2 - st.m - st.c
    if d < 0 or d % 2:
        return TwoCycleFeasibility(l1, l2, None, False,
                                   f"l1 + l2 - m - c = {d} is not a non-negative even number")
    if l1 - l2 > st.m - st.c:
        return TwoCycleFeasibility(l1, l2, d // 2, False,
                                   f"l1 - l2 = {l1 - l2} > m - c = {st.m - st.c}")
    return TwoCycleFeasibility(l1, l2, d // 2, True, "ok")


def factor_two_cycles(sigma: Permutation, l1: int, l2: int, n: int | None = None,
                      allowed: Sequence[int] | None = None) -> tuple[Cycle, Cycle]:
    """C1 (length l1), C2 (length l2) with C1 o C2 = sigma.

    Each cycle of sigma is cut into two overlapping arcs; the arcs are glued
    across cycles with transpositions, then both cycles are lengthened in
    step, first by trading private points, then by absorbing fixed points.
    ``allowed`` restricts which fixed points may be absorbed.
    """
    n = sigma.degree if n is None else n
    if sigma.degree != n:
        raise DecomposeError("sigma degree differs from n")
    feas = two_cycle_feasible(sigma, l1, l2)
    if not feas.feasible:
        raise DecomposeError(f"no two-cycle factorization: {feas.reason}")
    supp = sigma.support
    pool = sorted(set(range(1, n + 1) if allowed is None else allowed) - supp)
    cyc = sigma.cycles()
    if feas.s is None:
        big, small = sorted(cyc, key=len, reverse=True)
        return big, small
    s = feas.s
    m = len(supp)
    if l1 > m + len(pool):
        raise DecomposeError(f"need {l1 - m} spare points, only {len(pool)} available")
    if not cyc:
        if l1 > len(pool):
            raise DecomposeError("not enough points")
        c = Cycle(tuple(pool[:l1]))
        return c, c.inverse()
    f = max(0, l1 - m)
    g = s - f
    L2 = l2 - s
    # arc sizes on the C2 side: y_i in [1, m_i], summing to L2
    ys = [1] * len(cyc)
    extra = L2 - len(cyc)
    assert extra >= 0
    for i, cy in enumerate(cyc):
        add = min(extra, len(cy) - 1)
        ys[i] += add
        extra -= add
    assert extra == 0
    ident = Permutation.identity(n)
    C1 = C2 = ident
    a = None
    for cy, y in zip(cyc, ys):
        pts = cy.points
        x = len(pts) + 1 - y
        B1 = _perm(n, [pts[:x]]) if x >= 2 else ident
        B2 = _perm(n, [pts[x - 1:]]) if y >= 2 else ident
        b = pts[x - 1]
        if a is None:
            C1, C2, a = B1, B2, b
        else:
            t = _tr(n, a, b)
            C1 = compose(compose(C1, B1), t)
            C2 = compose(t, compose(C2, B2))
    for _ in range(g):
        s1, s2 = C1.support, C2.support
        p = min(s2 - s1)
        q = min(s1 - s2)
        t = _tr(n, p, q)
        C1, C2 = compose(C1, t), compose(t, C2)
    for i in range(f):
        both = C1.support & C2.support
        a2 = min(both) if both else a
        t = _tr(n, a2, pool[i])
        C1, C2 = compose(C1, t), compose(t, C2)
    c1, c2 = _single_cycle(C1), _single_cycle(C2)
    if len(c1) != l1 or len(c2) != l2 or compose(C1, C2) != sigma:
        raise AssertionError("two-cycle construction failed validation")
    return c1, c2


def chain_cycle(C: Cycle, k: int, l: int) -> list[Cycle]:
    """Split a cycle of length l + (k-1)(l-1) into k overlapping l-cycles."""
    if k < 1 or l < 2:
        raise DecomposeError("need k >= 1 and l >= 2")
    if len(C) != _chain_len(k, l):
        raise DecomposeError(f"cycle length {len(C)} != {_chain_len(k, l)}")
    pts = C.points
    return [Cycle(pts[i * (l - 1): i * (l - 1) + l]) for i in range(k)]


# -- padding -----------------------------------------------------------------

def adjust_witness_count(w: Witness, target_k: int) -> Witness:
    k, l = w.k, w.l
    if target_k < k:
        raise DecomposeError("cannot drop factors")
    diff = target_k - k
    factors = list(w.factors)
    if diff % 2:
        if l % 2 == 0:
            raise DecomposeError("odd increase needs l odd")
        if not factors:
            raise DecomposeError("nothing to split")
        d = _power(factors[0], (l + 1) // 2, w.n)
        factors[0:1] = [d, d]
        diff -= 1
    if diff:
        if l > w.n:
            raise DecomposeError("no room for a padding pair")
        c = Cycle(tuple(range(1, l + 1)))
        factors += [c, c.inverse()] * (diff // 2)
    out = Witness(factors, w.target, l, w.method)
    out.validate()
    return out


def _identity_factors(points: Sequence[int], j: int, l: int) -> list[Cycle]:
    if len(points) < l:
        raise DecomposeError("not enough points for an l-cycle")
    c = Cycle(tuple(points[:l]))
    if j % 2 == 0:
        return [c, c.inverse()] * (j // 2)
    if l % 2 == 0 or j < 3:
        raise DecomposeError("identity needs an even number of factors here")
    sq = _power(c, -2, 0)
    return [c, c, sq] + [c, c.inverse()] * ((j - 3) // 2)


# -- block solver ------------------------------------------------------------

class _Stuck(Exception):
    pass


def _restrict_ok(factors, points) -> bool:
    pts = set(points)
    return all(f.support <= pts for f in factors)


def _pad(factors: list, j: int, l: int, points: Sequence[int], n: int) -> list:
    diff = j - len(factors)
    if diff < 0:
        raise _Stuck
    if diff % 2:
        if l % 2 == 0:
            raise _Stuck
        d = _power(factors[0], (l + 1) // 2, n)
        factors = [d, d] + factors[1:]
        diff -= 1
    if diff:
        c = Cycle(tuple(points[:l]))
        factors = factors + [c, c.inverse()] * (diff // 2)
    return factors


def _two_long(block: Permutation, j: int, l: int, points: Sequence[int]) -> list | None:
    n = block.degree
    st = stats(block)
    npts = len(points)
    budgets = [j] + [x for x in range(j - 1, 1, -1) if (j - x) % 2 == 0 or l % 2]
    for jj in budgets:
        for b in range(jj // 2, -1, -1):
            a = jj - b
            L1 = _chain_len(a, l)
            if L1 > npts:
                continue
            if b == 0:
                if st.c == 1 and st.m == L1:
                    return _pad(chain_cycle(block.cycles()[0], a, l), j, l, points, n)
                continue
            L2 = _chain_len(b, l)
            if not two_cycle_feasible(block, L1, L2).feasible:
                continue
            try:
                c1, c2 = factor_two_cycles(block, L1, L2, n, allowed=points)
            except DecomposeError:
                continue
            return _pad(chain_cycle(c1, a, l) + chain_cycle(c2, b, l), j, l, points, n)
    return None


def _segment_candidates(block: Permutation, l: int, points: Sequence[int]):
    """l-cycles D built from arcs of the cycles of ``block``.

    Multiplying by D^-1 merges the touched cycles after trimming each arc,
    which lowers m + c by l - 1 when no fixed point is used.
    """
    cyc = block.cycles()
    fixed = [p for p in points if block(p) == p]
    exact = [cy for cy in cyc if len(cy) == l]
    if exact:
        yield exact[0]
    orders = [sorted(cyc, key=lambda c: (-len(c), c.points[0])),
              sorted(cyc, key=lambda c: (len(c), c.points[0]))]
    seen = set()
    for order in orders:
        take = [1] * min(len(order), l)
        order = order[:len(take)]
        left = l - len(take)
        for i, cy in enumerate(order):
            add = min(left, len(cy) - 1)
            take[i] += add
            left -= add
        if left > len(fixed):
            continue
        seq = []
        for cy, t in zip(order, take):
            seq.extend(cy.points[:t])
        seq.extend(fixed[:left])
        if len(seq) != l:
            continue
        D = Cycle(tuple(seq))
        if D not in seen:
            seen.add(D)
            yield D


def solve_block(block: Permutation, j: int, l: int, points: Sequence[int] | None = None,
                depth: int = 0, use_oracle: bool = True) -> list[Cycle]:
    """j l-cycles supported in ``points`` whose product is ``block``."""
    n = block.degree
    points = sorted(range(1, n + 1) if points is None else points)
    if not block.support <= set(points):
        raise DecomposeError("block moves points outside its ambient set")
    st = stats(block)
    if (st.m + st.c) % 2 != (j * (l - 1)) % 2:
        raise _Stuck
    if len(points) < l:
        raise _Stuck
    if st.m == 0:
        return _identity_factors(points, j, l)
    if j == 1:
        if st.c == 1 and st.m == l:
            return block.cycles()
        raise _Stuck
    out = _two_long(block, j, l, points)
    if out is not None:
        return out
    if j >= 3 and depth < 6:
        for D in _segment_candidates(block, l, points):
            rest = compose(inverse(D.to_perm(n)), block)
            try:
                return [D] + solve_block(rest, j - 1, l, points, depth + 1, use_oracle)
            except _Stuck:
                continue
    if depth == 0:
        plan = _pack(block, j, l, points)
        if plan is not None:
            return plan
        if use_oracle and len(points) <= ORACLE_BLOCK_LIMIT:
            return _oracle_block(block, j, l, points)
    raise _Stuck


ORACLE_BLOCK_LIMIT = 12


def _oracle_block(block: Permutation, j: int, l: int, points: Sequence[int]) -> list[Cycle]:
    pts = list(points)
    idx = {p: i + 1 for i, p in enumerate(pts)}
    N = len(pts)
    local = Permutation.from_cycles(N, [tuple(idx[x] for x in c.points) for c in block.cycles()])
    try:
        fac = oracle.peel_witness(local, j, l, N)
    except oracle.OraclePreconditionError:
        raise _Stuck from None
    return [Cycle(tuple(pts[x - 1] for x in f.points)) for f in fac]


# -- disjoint packing ----------------------------------------------------------

def _type_block_ok(parts: tuple, npts: int, j: int, l: int) -> bool:
    return _type_block_ok_cached(tuple(sorted(parts, reverse=True)), npts, j, l)


@lru_cache(maxsize=200_000)
def _type_block_ok_cached(parts: tuple, npts: int, j: int, l: int) -> bool:
    m = sum(parts)
    if m > npts or npts < l:
        return False
    if (m + len(parts)) % 2 != (j * (l - 1)) % 2:
        return False
    if m + len(parts) > j * l:
        # necessary condition when no part equals l; l-parts are peeled separately
        if l not in parts:
            return False
    rep = Permutation.from_cycles(max(npts, 1), type_rep_cycles(parts))
    try:
        solve_block(rep, j, l, range(1, npts + 1), depth=1, use_oracle=False)
    except (_Stuck, DecomposeError):
        return False
    return True


def _pack_types(parts: tuple, free: int, k: int, l: int, budget_steps: list):
    """Split the multiset ``parts`` into blocks with budgets summing to k.

    Returns a list of (block_parts, budget, extra_points) or None.
    """
    memo: dict = {}

    def rec(rest: tuple, kk: int, fr: int):
        key = (rest, kk, fr)
        if key in memo:
            return memo[key]
        memo[key] = None
        m = sum(rest)
        if _type_block_ok(rest, m + fr, kk, l):
            memo[key] = [(rest, kk, fr)]
            return memo[key]
        for b in budget_steps:
            if b >= kk:
                continue
            for blk in _block_candidates(rest, b, l):
                rem = _remove(rest, blk)
                mb = sum(blk)
                need = max(0, l - mb)
                for give in sorted({need, max(need, _chain_len((b + 1) // 2, l) - mb)}):
                    if give > fr or give < 0:
                        continue
                    if not _type_block_ok(blk, mb + give, b, l):
                        continue
                    sub = rec(rem, kk - b, fr - give)
                    if sub is not None:
                        memo[key] = [(blk, b, give)] + sub
                        return memo[key]
        return None

    return rec(tuple(sorted(parts, reverse=True)), k, free)


def _remove(parts: tuple, blk: tuple) -> tuple:
    rest = list(parts)
    for p in blk:
        rest.remove(p)
    return tuple(rest)


def _block_candidates(parts: tuple, b: int, l: int):
    """Sub-multisets filling a budget-b block close to its capacity."""
    cap = b * (l - 1) + 2
    parity = (b * (l - 1)) % 2
    seen = set()
    if b == 1:
        if l in parts:
            yield (l,)
        return
    if l in parts and b >= 1:
        pass
    asc = sorted(parts)
    desc = sorted(parts, reverse=True)
    for order in (asc, desc):
        for skip in range(0, 3):
            chosen, w = [], 0
            skipped = 0
            for p in order:
                if w + p + 1 <= cap:
                    if skipped < skip and chosen:
                        skipped += 1
                        continue
                    chosen.append(p)
                    w += p + 1
            # fix parity by dropping the smallest element that flips it
            while chosen and w % 2 != parity:
                odd = [q for q in chosen if (q + 1) % 2 == 1]
                if not odd:
                    break
                q = min(odd)
                chosen.remove(q)
                w -= q + 1
            if chosen and w % 2 == parity:
                t = tuple(sorted(chosen, reverse=True))
                if t not in seen:
                    seen.add(t)
                    yield t


def _pack(block: Permutation, j: int, l: int, points: Sequence[int]) -> list | None:
    n = block.degree
    cyc = block.cycles()
    if len(cyc) < 2:
        return None
    parts = tuple(sorted((len(c) for c in cyc), reverse=True))
    fixed = [p for p in points if block(p) == p]
    plan = _pack_types(parts, len(fixed), j, l, [2, 4, 3, 1, 6, 5])
    if plan is None or len(plan) < 2:
        return None
    pool = sorted(cyc, key=lambda c: (-len(c), c.points[0]))
    factors: list = []
    fpos = 0
    for blk, b, give in plan:
        chosen = []
        for p in blk:
            for i, c in enumerate(pool):
                if len(c) == p:
                    chosen.append(pool.pop(i))
                    break
        amb = sorted(set().union(*(c.support for c in chosen)) | set(fixed[fpos:fpos + give]))
        fpos += give
        sub = _perm(n, chosen)
        try:
            factors += solve_block(sub, b, l, amb, depth=1, use_oracle=False)
        except _Stuck:
            return None
    return factors


# -- support-bounded and block-splitting routes --------------------------------

def bounded_part_ceiling(k: int, l: int) -> int:
    if l % 3 == 2:
        return k * (l - 2) // 3 + 1
    if l % 3 == 1:
        return k * (l - 1) // 3
    raise HypothesisError("bounded-part ceiling defined for 3 not dividing l")


def _witness(factors, sigma, l, method) -> Witness:
    w = Witness(list(factors), sigma, l, method)
    w.validate()
    return w


def split_small_support(sigma: Permutation, k: int, l: int, n: int | None = None,
                        trace: list | None = None) -> Witness:
    n = sigma.degree if n is None else n
    if sigma.degree != n:
        raise DecomposeError("sigma degree differs from n")
    st = stats(sigma)
    if l <= 3 or l % 3 == 0:
        raise HypothesisError("needs l > 3 and 3 not dividing l")
    if k < 2 or (k % 2 and k < 3):
        raise HypothesisError("needs k >= 2")
    if (st.m + st.c) % 2:
        raise HypothesisError("sigma must be even")
    if k >= 5 and st.c > bounded_part_ceiling(k, l):
        raise HypothesisError(f"{st.c} cycles exceeds the bounded-part ceiling")
    if n > n_k_l(k, l).value:
        raise HypothesisError("degree above n(k,l)")
    if st.m == 0:
        raise HypothesisError("identity is handled by the caller")
    pts = list(range(1, n + 1))
    if k % 2 == 0:
        L = _chain_len(k // 2, l)
        if L > n:
            raise HypothesisError(f"long cycles of length {L} do not fit in degree {n}")
        c1, c2 = factor_two_cycles(sigma, L, L, n)
        return _witness(chain_cycle(c1, k // 2, l) + chain_cycle(c2, k // 2, l), sigma, l,
                        "bounded-part/equal-long-cycles")
    if l % 2 == 0:
        raise HypothesisError("k odd needs l odd")
    if 3 <= st.m <= l - 1:
        l1 = st.m if st.m % 2 else st.m - 1
        first = solve_block(sigma, 3, l1, pts, depth=1, use_oracle=False)
        if trace is not None:
            trace.append(("base-3", l1, [str(f) for f in first]))
        w = lengthen_membership(sigma, 3, l1, n, l, _witness(first, sigma, l1, "base-3"))
        return _witness(adjust_witness_count(w, k).factors, sigma, l, "bounded-part/shorter-cycles-lengthened")
    if l <= st.m <= 2 * l - 1:
        base = solve_block(sigma, 3, l, pts, depth=1, use_oracle=False)
        w = adjust_witness_count(_witness(base, sigma, l, ""), k)
        return _witness(w.factors, sigma, l, "bounded-part/three-factor-base")
    a, b = (k + 1) // 2, (k - 1) // 2
    L1, L2 = _chain_len(a, l), _chain_len(b, l)
    if L1 > n:
        raise HypothesisError(f"long cycle of length {L1} does not fit in degree {n}")
    c1, c2 = factor_two_cycles(sigma, L1, L2, n)
    return _witness(chain_cycle(c1, a, l) + chain_cycle(c2, b, l), sigma, l,
                    "bounded-part/unequal-long-cycles")


def _take(cycles: list, length: int, count: int) -> list:
    got = [c for c in cycles if len(c) == length][:count]
    if len(got) < count:
        raise AssertionError(f"counting bound failed: need {count} {length}-cycles")
    return got


def split_off_block(sigma: Permutation, k: int, l: int) -> SplitPlan:
    if l <= 3 or l % 3 != 2:
        raise HypothesisError("block splitting needs l > 3, l = 2 (mod 3)")
    if k < 5:
        raise HypothesisError("block splitting needs k >= 5")
    M = (l - 2) // 3
    cyc = sigma.cycles()
    st = stats(sigma)
    if st.c < k * M + 2:
        raise HypothesisError(f"needs at least {k * M + 2} cycles, sigma has {st.c}")
    n2, n3 = st.n(2), st.n(3)

    def plan(block, k1, eps, alpha, shape):
        rest = [c for c in cyc if c not in block]
        return SplitPlan(block, k1, k - k1, eps, M, alpha, shape, rest)

    def threes(alpha):
        return _take(cyc, 3, alpha // 3)

    if k == 5:
        if not (st.c == 5 * M + 2 and n2 == 5 * M + 1 and n3 == 1):
            raise HypothesisError("k = 5 split needs 5M+1 2-cycles and one 3-cycle")
        return plan(_take(cyc, 2, 3 * M + 1), 3, 0, None, "2^(3M+1)")
    if k % 2 == 0:
        alpha = next(a for a in (4 * M + 2, 4 * M + 3, 8 * M + 5) if a % 3 == 0)
        if 3 * n3 >= 8 * M + 5:
            if alpha == 8 * M + 5:
                return plan(threes(alpha), 4, 0, alpha, "3^(alpha/3)")
            return plan(threes(alpha), 2, 4 * M + 3 - alpha, alpha, "3^(alpha/3)")
        if n3 >= 1:
            return plan(_take(cyc, 2, 2 * M) + _take(cyc, 3, 1), 2, 0, None, "2^(2M).3")
        return plan(_take(cyc, 2, 4 * M + 2), 4, 1, None, "2^(4M+2)")
    if k % 4 == 3:
        alpha = next(a for a in (4 * M + 3, 8 * M + 4, 8 * M + 5) if a % 3 == 0)
        if 3 * n3 >= 8 * M + 5:
            if alpha == 4 * M + 3:
                return plan(threes(alpha), 2, 0, alpha, "3^(alpha/3)")
            return plan(threes(alpha), 4, 8 * M + 5 - alpha, alpha, "3^(alpha/3)")
        if n3 >= 1:
            return plan(_take(cyc, 2, 2 * M) + _take(cyc, 3, 1), 2, 0, None, "2^(2M).3")
        return plan(_take(cyc, 2, 4 * M + 2), 4, 1, None, "2^(4M+2)")
    alpha = next(a for a in (4 * M + 1, 4 * M + 2, 4 * M + 3) if a % 3 == 0)
    if 3 * n3 >= 4 * M + 3:
        return plan(threes(alpha), 2, 4 * M + 3 - alpha, alpha, "3^(alpha/3)")
    return plan(_take(cyc, 2, 4 * M + 2), 4, 1, None, "2^(4M+2)")


def _split_route(sigma: Permutation, k: int, l: int, points: Sequence[int]) -> list[Cycle]:
    """Bounded-part or split-and-recurse, on the ambient set ``points``."""
    n = sigma.degree
    st = stats(sigma)
    N = len(points)
    if st.m == 0:
        return _identity_factors(points, k, l)
    if k < 5:
        return solve_block(sigma, k, l, points)
    if st.c <= bounded_part_ceiling(k, l):
        local, back = _localize(sigma, points)
        w = split_small_support(local, k, l, N)
        return [Cycle(tuple(back[x] for x in f.points)) for f in w.factors]
    p = split_off_block(sigma, k, l)
    rho = _perm(n, p.block)
    tau = _perm(n, p.rest)
    amb_rho = sorted(rho.support)
    amb_tau = sorted(set(points) - rho.support)
    f_rho = solve_block(rho, p.k1, l, amb_rho)
    f_tau = _split_route(tau, p.k2, l, amb_tau)
    return f_tau + f_rho


def _localize(sigma: Permutation, points: Sequence[int]):
    pts = sorted(points)
    fwd = {p: i + 1 for i, p in enumerate(pts)}
    back = {i + 1: p for i, p in enumerate(pts)}
    local = Permutation.from_cycles(len(pts), [tuple(fwd[x] for x in c.points)
                                               for c in sigma.cycles()])
    return local, back


def _theorem_b(sigma: Permutation, k: int) -> list[Cycle]:
    """l = 2: each r-cycle is r-1 transpositions; pad with equal pairs."""
    out = []
    for c in sigma.cycles():
        pts = c.points
        out += [Cycle((pts[i], pts[i + 1])) for i in range(len(pts) - 1)]
    if len(out) > k or (k - len(out)) % 2:
        raise _Stuck
    t = Cycle((1, 2))
    return out + [t, t] * ((k - len(out)) // 2)


def lengthen_membership(sigma: Permutation, k: int, l: int, n: int, target_l: int,
                        witness: Witness | None = None) -> Witness:
    if target_l < l:
        raise DecomposeError("target length below current length")
    step = 1 if k % 2 == 0 else 2
    if (target_l - l) % step:
        raise DecomposeError("k odd: lengths change in steps of 2")
    if target_l > n:
        raise DecomposeError(f"each step needs the current length <= n - {step}")
    if witness is not None:
        witness.validate()
    pts = list(range(1, n + 1))
    try:
        fac = solve_block(sigma, k, target_l, pts)
    except _Stuck:
        raise DecomposeError("could not re-solve at the target length") from None
    return _witness(fac, sigma, target_l, "lengthen/re-solve")


# -- dispatcher ----------------------------------------------------------------

PEEL_LIMIT = 12


def decompose(sigma: Permutation, k: int, l: int, n: int | None = None,
              method: str = "auto", peel_limit: int = PEEL_LIMIT,
              enforce_bound: bool = True) -> Witness:
    """Validated list of k l-cycles whose right-to-left product is sigma.

    method: "auto" (oracle peeling up to ``peel_limit`` points, constructions
    above), "oracle", or "constructive".
    """
    n = sigma.degree if n is None else n
    if sigma.degree != n:
        raise DecomposeError("sigma degree differs from n")
    try:
        check_kl(k, l)
    except BoundsError as e:
        raise DecomposeError(str(e)) from None
    st = stats(sigma)
    if (st.m + st.c) % 2:
        raise DecomposeError("sigma is odd")
    if l > n:
        raise DecomposeError("l exceeds the degree")
    if enforce_bound and n > n_k_l(k, l).value:
        raise DecomposeError(f"degree {n} above n({k},{l}) = {n_k_l(k, l).value}; "
                             "membership is not guaranteed")
    if method not in ("auto", "oracle", "constructive"):
        raise DecomposeError(f"unknown method {method!r}")
    pts = list(range(1, n + 1))
    if st.m == 0:
        return _finish(_identity_factors(pts, k, l), sigma, l, "identity")
    if method == "oracle" or (method == "auto" and n <= peel_limit):
        try:
            fac = oracle.peel_witness(sigma, k, l, n, ceiling=max(n, oracle.DEFAULT_CEILING))
        except oracle.OraclePreconditionError as e:
            raise DecomposeError(str(e)) from None
        return _finish(fac, sigma, l, "oracle-peel")
    errors = []
    if l == 2:
        try:
            return _finish(_theorem_b(sigma, k), sigma, l, "transpositions")
        except _Stuck:
            errors.append("transposition route")
    if l > 3 and l % 3 and k >= 5 and n <= n_k_l(k, l).value:
        try:
            return _finish(_split_route(sigma, k, l, pts), sigma, l, "split-route")
        except (HypothesisError, _Stuck) as e:
            errors.append(f"split route: {e}")
    try:
        return _finish(solve_block(sigma, k, l, pts, use_oracle=False), sigma, l, "block-solver")
    except _Stuck:
        errors.append("block solver")
    raise DecomposeError("no construction found (" + "; ".join(errors) + ")")


def _finish(factors, sigma, l, method) -> Witness:
    w = _witness(factors, sigma, l, method)
    if sigma.support:
        v = ree_certificate_check(sigma, w.factors)
        if not v.ok:
            raise AssertionError(f"witness fails the orbit inequality: {v.numbers}")
    return w
