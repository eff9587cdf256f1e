"""Exact reachability of cycle types under multiplication by l-cycles.

Membership in a product of conjugacy classes depends only on cycle type, so
the search runs over types: level i+1 collects the types of rep(t) o c for
every type t on level i and every l-cycle c.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .perm_core import Cycle, CycleType, Permutation, cycles_product, inverse, type_rep_cycles

CACHE_VERSION = 1
DEFAULT_CEILING = 16
CACHE_ENV = "CYCLEPROD_CACHE"

Parts = tuple  # non-increasing tuple of ints >= 2


class OracleGuardError(RuntimeError):
    """Raised when a request exceeds the configured resource ceiling."""


class OraclePreconditionError(ValueError):
    pass


class UnboundedAtCeiling(RuntimeError):
    def __init__(self, k, l, ceiling):
        super().__init__(f"every even permutation of degree {ceiling} is a product of "
                         f"{k} {l}-cycles: UNBOUNDED-AT-CEILING")
        self.k, self.l, self.ceiling = k, l, ceiling


def partitions(n: int, largest: int | None = None) -> Iterator[tuple]:
    """Partitions of n into parts >= 2, parts non-increasing."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 1, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def all_types(n: int) -> list[tuple]:
    out = []
    for m in range(n + 1):
        out.extend(partitions(m))
    return sorted(out, key=_type_order)


def even_types(n: int) -> list[tuple]:
    return [t for t in all_types(n) if (sum(t) + len(t)) % 2 == 0]


def _type_order(t):
    return (sum(t), t)


def type_of(p: Permutation) -> tuple:
    return p.cycle_type().parts


def rep_perm(parts: tuple, n: int) -> Permutation:
    return Permutation.from_cycles(n, type_rep_cycles(parts))


def estimate_memory_bytes(n: int, l: int) -> int:
    rows = math.comb(n, l) * math.factorial(l - 1)
    return rows * n * 2 * 4


# -- vectorised helpers ------------------------------------------------------

@lru_cache(maxsize=None)
def _patterns(l: int) -> np.ndarray:
    """Cyclic orders of 0..l-1 starting at 0, lexicographic."""
    rows = [(0,) + p for p in itertools.permutations(range(1, l))]
    return np.array(rows, dtype=np.int16).reshape(len(rows), l)


def _cycle_images(pts: np.ndarray, n: int) -> np.ndarray:
    """pts: (r, l) array of cycles (0-based) -> (r, n) image arrays."""
    r, l = pts.shape
    img = np.tile(np.arange(n, dtype=np.int16), (r, 1))
    rows = np.arange(r)[:, None]
    img[rows, pts] = np.roll(pts, -1, axis=1)
    return img


def _cycles_on_subsets(subsets: np.ndarray, l: int) -> np.ndarray:
    pat = _patterns(l)
    pts = subsets[:, pat]  # (s, q, l)
    return pts.reshape(-1, l)


@lru_cache(maxsize=None)
def _key_weights(n: int) -> np.ndarray:
    w = np.zeros(n + 1, dtype=np.int64)
    acc = 1
    for j in range(2, n + 1):
        w[j] = acc
        acc *= n // j + 1
    return w


def _type_keys(P: np.ndarray) -> np.ndarray:
    """Integer key of the cycle type of every row of P (rows are 0-based images)."""
    r, n = P.shape
    idx = np.arange(n, dtype=P.dtype)
    lengths = np.zeros((r, n), dtype=np.int16)
    cur = P.copy()
    for step in range(1, n + 1):
        hit = (cur == idx) & (lengths == 0)
        lengths[hit] = step
        if step == n or not (lengths == 0).any():
            break
        cur = np.take_along_axis(P, cur.astype(np.intp), axis=1)
    w = _key_weights(n)
    keys = np.zeros(r, dtype=np.int64)
    for j in range(2, n + 1):
        cnt = (lengths == j).sum(axis=1)
        if cnt.any():
            keys += (cnt // j) * w[j]
    return keys


def _decode_key(key: int, n: int) -> tuple:
    w = _key_weights(n)
    parts = []
    for j in range(n, 1, -1):
        q, key = divmod(key, int(w[j]))
        parts.extend([j] * q)
    assert key == 0
    return tuple(parts)


def _encode_type(parts: tuple, n: int) -> int:
    w = _key_weights(n)
    return int(sum(int(w[p]) for p in parts))


def _subset_blocks(parts: tuple, n: int, l: int, chunk: int) -> Iterator[np.ndarray]:
    """Point subsets of size l that matter for rep(parts).

    Fixed points of rep are interchangeable, so only the first f of them are
    ever used together with l - f moved points.
    """
    m = sum(parts)
    free = n - m
    moved = range(m)
    for f in range(0, min(l, free) + 1):
        if l - f > m:
            continue
        fixed = tuple(range(m, m + f))
        buf = []
        for sub in itertools.combinations(moved, l - f):
            buf.append(sub + fixed)
            if len(buf) >= chunk:
                yield np.array(buf, dtype=np.int16)
                buf = []
        if buf:
            yield np.array(buf, dtype=np.int16)


def expand_type(parts: tuple, n: int, l: int) -> set:
    """All types of rep(parts) o c over l-cycles c of S_n."""
    rep = np.array([x - 1 for x in rep_perm(parts, n).images], dtype=np.int16)
    per = math.factorial(l - 1)
    chunk = max(1, 400_000 // per)
    keys: set = set()
    for subs in _subset_blocks(parts, n, l, chunk):
        C = _cycle_images(_cycles_on_subsets(subs, l), n)
        P = rep[C.astype(np.intp)]
        keys.update(np.unique(_type_keys(P)).tolist())
    return {_decode_key(k, n) for k in keys}


# -- level sets --------------------------------------------------------------

@dataclass
class ReachableTypes:
    n: int
    l: int
    levels: list = field(default_factory=list)  # levels[i]: frozenset of parts tuples

    def level(self, i: int) -> frozenset:
        return self.levels[i]

    def sorted_level(self, i: int) -> list:
        return sorted(self.levels[i], key=_type_order)

    @property
    def k(self) -> int:
        return len(self.levels) - 1


_memory: dict = {}


def _cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _cache_path(n: int, l: int) -> Path | None:
    d = _cache_dir()
    return None if d is None else d / f"levels_v{CACHE_VERSION}_n{n}_l{l}.json"


def _load_cache(n: int, l: int) -> list | None:
    path = _cache_path(n, l)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != CACHE_VERSION or data.get("n") != n or data.get("l") != l:
        return None
    return [frozenset(tuple(t) for t in lv) for lv in data["levels"]]


def _save_cache(n: int, l: int, levels: list) -> None:
    path = _cache_path(n, l)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {"version": CACHE_VERSION, "n": n, "l": l,
            "levels": [[list(t) for t in sorted(lv, key=_type_order)] for lv in levels]}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data))
    tmp.replace(path)


def clear_memory_cache() -> None:
    _memory.clear()
    _expand_cached.cache_clear()


@lru_cache(maxsize=4096)
def _expand_cached(parts: tuple, n: int, l: int) -> frozenset:
    return frozenset(expand_type(parts, n, l))


def class_power_types(n: int, l: int, k: int, ceiling: int = DEFAULT_CEILING) -> ReachableTypes:
    if not 2 <= l <= n:
        raise OraclePreconditionError(f"need 2 <= l <= n, got l={l}, n={n}")
    if k < 1:
        raise OraclePreconditionError("need k >= 1")
    if n > ceiling:
        raise OracleGuardError(
            f"degree {n} exceeds oracle ceiling {ceiling}; raise it explicitly "
            f"(about {estimate_memory_bytes(n, l) / 2**20:.0f} MiB of cycle images per sweep)")
    key = (n, l)
    levels = _memory.get(key)
    if levels is None:
        levels = _load_cache(n, l) or [frozenset({()})]
    grew = False
    while len(levels) <= k:
        nxt: set = set()
        for t in sorted(levels[-1], key=_type_order):
            nxt |= _expand_cached(t, n, l)
        levels.append(frozenset(nxt))
        grew = True
    _memory[key] = levels
    if grew:
        _save_cache(n, l, levels)
    return ReachableTypes(n, l, list(levels[:k + 1]))


def is_member_oracle(sigma: Permutation, k: int, l: int, n: int | None = None,
                     ceiling: int = DEFAULT_CEILING) -> bool:
    n = sigma.degree if n is None else n
    if sigma.degree != n:
        raise OraclePreconditionError("sigma degree differs from n")
    rt = class_power_types(n, l, k, ceiling)
    return type_of(sigma) in rt.level(k)


def covers_alternating(n: int, l: int, k: int, ceiling: int = DEFAULT_CEILING) -> bool:
    sign_even = (k * (l - 1)) % 2 == 0
    lv = class_power_types(n, l, k, ceiling).level(k)
    want = [t for t in all_types(n) if ((sum(t) + len(t)) % 2 == 0) == sign_even]
    return all(t in lv for t in want)


def brute_scan(k: int, l: int, n_ceiling: int, ceiling: int | None = None) -> dict:
    if k % 2 == 1 and l % 2 == 0:
        raise OraclePreconditionError("k odd with l even: products are odd permutations")
    if l > n_ceiling:
        raise OraclePreconditionError("need l <= n_ceiling")
    lim = max(DEFAULT_CEILING, n_ceiling) if ceiling is None else ceiling
    return {n: covers_alternating(n, l, k, lim) for n in range(l, n_ceiling + 1)}


def brute_nkl(k: int, l: int, n_ceiling: int, ceiling: int | None = None) -> int:
    """Largest n <= n_ceiling at which the k-th level holds every even type."""
    if n_ceiling > (DEFAULT_CEILING if ceiling is None else ceiling):
        raise OracleGuardError(f"n_ceiling {n_ceiling} exceeds oracle ceiling")
    scan = brute_scan(k, l, n_ceiling, ceiling)
    good = [n for n, ok in scan.items() if ok]
    if scan[n_ceiling]:
        raise UnboundedAtCeiling(k, l, n_ceiling)
    if not good:
        raise OraclePreconditionError(f"no degree in [{l}, {n_ceiling}] is covered")
    return max(good)


# -- witnesses ---------------------------------------------------------------

def _lcycles_on(n: int, l: int) -> Iterator[np.ndarray]:
    """All l-cycles of S_n in canonical order, one subset block at a time."""
    pat = _patterns(l)
    for sub in itertools.combinations(range(n), l):
        s = np.array(sub, dtype=np.int16)
        yield s[pat]


def peel_witness(sigma: Permutation, k: int, l: int, n: int | None = None,
                 ceiling: int = DEFAULT_CEILING) -> list[Cycle]:
    """Factors C_1..C_k (right-to-left product sigma), leftmost factor chosen first."""
    n = sigma.degree if n is None else n
    rt = class_power_types(n, l, k, ceiling)
    if type_of(sigma) not in rt.level(k):
        raise OraclePreconditionError(
            f"{sigma} is not a product of {k} {l}-cycles in S_{n}")
    residual = np.array([x - 1 for x in sigma.images], dtype=np.int16)
    factors: list[Cycle] = []
    for remaining in range(k, 0, -1):
        target = {_encode_type(t, n) for t in rt.level(remaining - 1)}
        supp = residual != np.arange(n)
        found = None
        # first pass skips l-cycles missing the residual's support; the
        # second pass (rarely needed) drops that pruning
        for prune in (bool(supp.any()), False):
            for pts in _lcycles_on(n, l):
                if prune and not supp[pts[0]].any():
                    continue
                # residual' = c^-1 o residual
                inv = _cycle_images(pts[:, ::-1].copy(), n)
                R = inv[np.arange(len(pts))[:, None], residual[None, :].astype(np.intp)]
                keys = _type_keys(R)
                hit = np.flatnonzero(np.isin(keys, list(target)))
                if hit.size:
                    i = int(hit[0])
                    found = pts[i]
                    residual = R[i].astype(np.int16)
                    break
            if found is not None or not prune:
                break
        if found is None:  # pragma: no cover - level sets are exact
            raise AssertionError("peeling failed although the type is reachable")
        factors.append(Cycle(tuple(int(x) + 1 for x in found)))
    assert cycles_product(factors, n) == sigma
    return factors


def elementwise_levels(n: int, l: int, k: int) -> list:
    """Type sets of all products of i l-cycles, by explicit enumeration (n <= 7)."""
    if n > 7:
        raise OracleGuardError("elementwise enumeration is limited to n <= 7")
    if not 2 <= l <= n:
        raise OraclePreconditionError("need 2 <= l <= n")
    pts = np.concatenate(list(_lcycles_on(n, l)))
    C = _cycle_images(pts, n).astype(np.intp)
    current = np.arange(n, dtype=np.int16)[None, :]
    out = [{()}]
    for _ in range(k):
        # every element times every l-cycle, applied first
        prod = current[:, C].reshape(-1, n)
        current = np.unique(prod, axis=0)
        out.append({_decode_key(int(x), n) for x in np.unique(_type_keys(current))})
    return out


def full_enumeration_check(n: int, l: int, k: int) -> bool:
    elem = elementwise_levels(n, l, k)
    cls = class_power_types(n, l, k)
    return all(set(cls.level(i)) == elem[i] for i in range(k + 1))


def export_jsonl(n: int, l: int, k: int, ceiling: int = DEFAULT_CEILING) -> Iterable[str]:
    rt = class_power_types(n, l, k, ceiling)
    for i in range(1, k + 1):
        lv = rt.level(i)
        for t in all_types(n):
            yield json.dumps({"n": n, "l": l, "k": i, "type": list(t), "member": t in lv})
