"""Permutations on {1..n}, composed right to left, with cycle-notation I/O."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class PermError(ValueError):
    pass


@dataclass(frozen=True)
class Cycle:
    """A cycle of length >= 2, stored with its smallest point first."""

    points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(int(p) for p in self.points)
        if len(pts) < 2:
            raise PermError(f"cycle needs at least 2 points: {pts}")
        if len(set(pts)) != len(pts):
            raise PermError(f"repeated point in cycle {pts}")
        if min(pts) < 1:
            raise PermError(f"labels start at 1: {pts}")
        i = pts.index(min(pts))
        object.__setattr__(self, "points", pts[i:] + pts[:i])

    def __len__(self):
        return len(self.points)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.points)

    def inverse(self) -> "Cycle":
        return Cycle(tuple(reversed(self.points)))

    def to_perm(self, n: int) -> "Permutation":
        return Permutation.from_cycles(n, [self])

    def __str__(self):
        return "(" + " ".join(map(str, self.points)) + ")"


@dataclass(frozen=True)
class CycleType:
    parts: tuple[int, ...]
    degree: int

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 2 for p in parts):
            raise PermError(f"cycle type parts must be >= 2: {parts}")
        if sum(parts) > self.degree:
            raise PermError(f"parts {parts} do not fit in degree {self.degree}")
        object.__setattr__(self, "parts", parts)

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def c(self) -> int:
        return len(self.parts)

    def is_even(self) -> bool:
        return (self.m + self.c) % 2 == 0

    def representative(self) -> "Permutation":
        """Parts laid out from point 1 upward, largest part first."""
        return Permutation.from_cycles(self.degree, type_rep_cycles(self.parts))

    def __str__(self):
        if not self.parts:
            return "1"
        cnt = Counter(self.parts)
        return ".".join(f"{p}^{cnt[p]}" if cnt[p] > 1 else str(p)
                        for p in sorted(cnt, reverse=True))


@dataclass(frozen=True)
class PermStats:
    m: int
    c: int
    counts: dict = field(default_factory=dict)

    def n(self, i: int) -> int:
        return self.counts.get(i, 0)


def type_rep_cycles(parts: Sequence[int]) -> list[Cycle]:
    out, start = [], 1
    for p in sorted(parts, reverse=True):
        out.append(Cycle(tuple(range(start, start + p))))
        start += p
    return out


class Permutation:
    """Immutable bijection of {1..degree}; ``images[i-1]`` is the image of i."""

    __slots__ = ("_img", "_cycles")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) for x in images)
        n = len(img)
        if n < 1:
            raise PermError("degree must be positive")
        if sorted(img) != list(range(1, n + 1)):
            raise PermError(f"not a bijection of 1..{n}: {img}")
        self._img = img
        self._cycles = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable) -> "Permutation":
        """Build from *disjoint* cycles (Cycle objects or point sequences)."""
        img = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            pts = cyc.points if isinstance(cyc, Cycle) else tuple(cyc)
            for p in pts:
                if p < 1 or p > n:
                    raise PermError(f"label {p} out of range 1..{n}")
                if p in seen:
                    raise PermError(f"repeated point {p}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a - 1] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return self._img

    def __call__(self, i: int) -> int:
        return self._img[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __repr__(self):
        return f"Permutation({format_cycles(self)}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self._img, 1) if x != i)

    def cycles(self) -> list[Cycle]:
        if self._cycles is None:
            self._cycles = _dcd(self._img)
        return list(self._cycles)

    def cycle_type(self) -> CycleType:
        return CycleType(tuple(len(c) for c in self.cycles()), self.degree)

    def extend(self, n: int) -> "Permutation":
        if n < self.degree:
            raise PermError("cannot shrink degree")
        return Permutation(self._img + tuple(range(self.degree + 1, n + 1)))


def _dcd(img: Sequence[int]) -> list[Cycle]:
    seen = [False] * (len(img) + 1)
    out = []
    for start in range(1, len(img) + 1):
        if seen[start] or img[start - 1] == start:
            continue
        pts = []
        x = start
        while not seen[x]:
            seen[x] = True
            pts.append(x)
            x = img[x - 1]
        out.append(Cycle(tuple(pts)))
    return out


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(i) = p(q(i)): q acts first."""
    if p.degree != q.degree:
        raise PermError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(pi[x - 1] for x in q.images)


def compose_all(perms: Sequence[Permutation], n: int | None = None) -> Permutation:
    """Right-to-left product of a list; the last element acts first."""
    if not perms:
        if n is None:
            raise PermError("empty product needs a degree")
        return Permutation.identity(n)
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = compose(p, out)
    return out


def cycles_product(cycles: Sequence[Cycle], n: int) -> Permutation:
    """Right-to-left product of (possibly overlapping) cycles in S_n."""
    img = list(range(1, n + 1))
    for cyc in reversed(cycles):
        pts = cyc.points
        if max(pts) > n:
            raise PermError(f"cycle {cyc} does not fit in degree {n}")
        step = {a: b for a, b in zip(pts, pts[1:] + pts[:1])}
        img = [step.get(x, x) for x in img]
    return Permutation(img)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images, 1):
        inv[x - 1] = i
    return Permutation(inv)


def dcd_star(p: Permutation) -> list[Cycle]:
    return p.cycles()


def stats(p: Permutation) -> PermStats:
    cyc = p.cycles()
    counts = dict(sorted(Counter(len(c) for c in cyc).items()))
    return PermStats(m=sum(len(c) for c in cyc), c=len(cyc), counts=counts)


def is_even(p: Permutation) -> bool:
    s = stats(p)
    return (s.m + s.c) % 2 == 0


_CYC_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse disjoint cycle notation like ``(1 2 3)(4 5)``.

    Commas are accepted as separators. Without ``degree`` the largest label
    is used (at least 1).
    """
    s = text.strip()
    if s in ("", "()", "e", "id"):
        return Permutation.identity(degree or 1)
    pos = 0
    cycles = []
    for mt in _CYC_RE.finditer(s):
        if s[pos:mt.start()].strip():
            raise PermError(f"malformed cycle notation: {text!r}")
        body = mt.group(1).replace(",", " ").split()
        pos = mt.end()
        if not body:
            continue
        try:
            pts = tuple(int(x) for x in body)
        except ValueError:
            raise PermError(f"non-integer label in {text!r}") from None
        if len(pts) == 1:
            continue
        if len(set(pts)) != len(pts):
            raise PermError(f"repeated point in {text!r}")
        cycles.append(pts)
    if s[pos:].strip() or (pos == 0 and s):
        raise PermError(f"malformed cycle notation: {text!r}")
    top = max((max(c) for c in cycles), default=1)
    if degree is None:
        degree = top
    if top > degree:
        raise PermError(f"label {top} out of range for degree {degree}")
    if any(min(c) < 1 for c in cycles):
        raise PermError("labels start at 1")
    return Permutation.from_cycles(degree, cycles)


def parse_cycle(text: str) -> Cycle:
    p = parse_cycles(text)
    cyc = p.cycles()
    if len(cyc) != 1:
        raise PermError(f"expected a single cycle: {text!r}")
    # keep the written orientation
    body = _CYC_RE.search(text).group(1).replace(",", " ").split()
    return Cycle(tuple(int(x) for x in body))


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join(str(c) for c in cyc)


def orbit_count(cycles: Sequence[Cycle], ambient: Iterable[int]) -> int:
    """Orbits of <cycles> on ``ambient``; untouched points count once each."""
    parent = {x: x for x in ambient}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cyc in cycles:
        pts = cyc.points
        for p in pts:
            if p not in parent:
                raise PermError(f"point {p} outside the ambient set")
        r = find(pts[0])
        for p in pts[1:]:
            s = find(p)
            if s != r:
                parent[s] = r
    return len({find(x) for x in parent})
