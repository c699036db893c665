"""Noncrossing matchings with rays and dot decorations.

Conventions used throughout the package:

- Vertices are the 1-indexed positions 1..n on a horizontal baseline.
- A matching of type (n-k, k) has k arcs and n-2k rays.  Arcs are drawn
  above the baseline and may not cross; rays run upward forever, so no
  ray may sit beneath an arc.
- A dot on an arc pins it to a point (a degree-0 factor of the associated
  component); an undotted arc contributes a free two-sphere factor
  (degree 2).  Rays are always pinned and carry no explicit dot.
- A dotted matching is *standard* when no dotted arc is nested beneath
  another arc and every ray sits to the left of every dotted arc.  With
  m undotted arcs it corresponds to a standard two-row tableau of shape
  (n-m, m): the bottom row lists the right endpoints of the undotted arcs.

Text form (the codec): ``"<n>: item item ..."`` where an item is
``u<i>-<j>`` (undotted arc), ``d<i>-<j>`` (dotted arc) or ``r<i>`` (ray);
items are emitted sorted by leftmost vertex.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import (
    BadCounts,
    CodecSyntaxError,
    CrossingArcs,
    DomainError,
    DotOnNonArc,
    NoStandardCompletion,
    NotInRestrictableSet,
    NotStandard,
    RayUnderArc,
    ShapeMismatch,
    VertexReuse,
)

Arc = tuple[int, int]


@dataclass(frozen=True, order=True)
class Matching:
    """A noncrossing matching of type (n-k, k); immutable and hashable."""

    n: int
    arcs: tuple[Arc, ...]
    rays: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.arcs)

    def partner(self, v: int) -> int | None:
        """The other endpoint of v's arc, or None if v is a ray."""
        for i, j in self.arcs:
            if v == i:
                return j
            if v == j:
                return i
        return None

    def __str__(self) -> str:
        return format_matching(DottedMatching(self, ()))


@dataclass(frozen=True, order=True)
class DottedMatching:
    """A matching with a subset of its arcs dotted (pinned)."""

    base: Matching
    dotted: tuple[Arc, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def undotted(self) -> tuple[Arc, ...]:
        dotted = set(self.dotted)
        return tuple(a for a in self.base.arcs if a not in dotted)

    @property
    def m(self) -> int:
        """Number of undotted (free) arcs; homological degree is 2m."""
        return self.k - len(self.dotted)

    @property
    def is_standard(self) -> bool:
        for x, y in self.dotted:
            for i, j in self.base.arcs:
                if i < x and y < j:
                    return False
            if any(r > y for r in self.base.rays):
                return False
        return True

    def __str__(self) -> str:
        return format_matching(self)


@dataclass(frozen=True, order=True)
class StandardTableau:
    """A standard two-row tableau, rows strictly increasing left to right."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.top) + len(self.bottom)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.top), len(self.bottom))

    def check(self) -> None:
        n = self.n
        if sorted(self.top + self.bottom) != list(range(1, n + 1)):
            raise ShapeMismatch("rows must partition 1..n")
        if list(self.top) != sorted(self.top) or list(self.bottom) != sorted(self.bottom):
            raise ShapeMismatch("rows must be strictly increasing")
        if len(self.bottom) > len(self.top):
            raise ShapeMismatch("bottom row longer than top row")
        for t, b in zip(self.top, self.bottom):
            if b <= t:
                raise ShapeMismatch("columns must strictly increase downward")


def _check_noncrossing(arcs: Iterable[Arc], rays: Iterable[int]) -> None:
    arcs = list(arcs)
    for (i, j), (p, q) in itertools.combinations(arcs, 2):
        if i < p < j < q or p < i < q < j:
            raise CrossingArcs(f"arcs ({i},{j}) and ({p},{q}) cross")
    for r in rays:
        for i, j in arcs:
            if i < r < j:
                raise RayUnderArc(f"ray {r} lies beneath arc ({i},{j})")


def validate(n: int, arcs: Iterable[Arc], rays: Iterable[int] = (),
             dotted: Iterable[Arc] = ()) -> DottedMatching:
    """Check raw arc/ray/dot data and return the dotted matching.

    Raises a :class:`~springer_tworow.errors.MatchingError` subclass naming
    the violated invariant.
    """
    if n < 0:
        raise BadCounts(f"vertex count {n} is negative")
    arcs = tuple(sorted(tuple(sorted(a)) for a in arcs))
    rays = tuple(sorted(rays))
    seen: set[int] = set()
    for i, j in arcs:
        if i == j:
            raise VertexReuse(f"arc ({i},{j}) repeats a vertex")
        for v in (i, j):
            if not 1 <= v <= n:
                raise BadCounts(f"vertex {v} outside 1..{n}")
            if v in seen:
                raise VertexReuse(f"vertex {v} used twice")
            seen.add(v)
    for r in rays:
        if not 1 <= r <= n:
            raise BadCounts(f"vertex {r} outside 1..{n}")
        if r in seen:
            raise VertexReuse(f"vertex {r} used twice")
        seen.add(r)
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise BadCounts(f"vertices {missing} unused")
    _check_noncrossing(arcs, rays)
    dotted = tuple(sorted({tuple(sorted(a)) for a in dotted}))
    arc_set = set(arcs)
    for d in dotted:
        if d not in arc_set:
            raise DotOnNonArc(f"dot on {d}, which is not an arc")
    return DottedMatching(Matching(n, arcs, rays), dotted)


# --- enumeration -----------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_matchings(n: int, k: int) -> tuple[Matching, ...]:
    """All noncrossing matchings of type (n-k, k), sorted by arc list.

    >>> [m.arcs for m in enumerate_matchings(4, 1)]
    [((1, 2),), ((2, 3),), ((3, 4),)]
    >>> len(enumerate_matchings(6, 3))
    5
    """
    if n < 0 or k < 0 or 2 * k > n:
        raise DomainError(f"no matchings of type ({n - k},{k}) on {n} vertices")
    out: list[Matching] = []
    arcs: list[Arc] = []
    stack: list[int] = []
    rays: list[int] = []

    def walk(pos: int) -> None:
        if pos > n:
            if not stack and len(arcs) == k:
                out.append(Matching(n, tuple(sorted(arcs)), tuple(rays)))
            return
        remaining = n - pos + 1
        # close the innermost open arc
        if stack:
            i = stack.pop()
            arcs.append((i, pos))
            walk(pos + 1)
            arcs.pop()
            stack.append(i)
        # open a new arc
        if len(arcs) + len(stack) < k and len(stack) + 1 <= remaining - 1:
            stack.append(pos)
            walk(pos + 1)
            stack.pop()
        # place a ray: only allowed outside every open arc
        if not stack and len(rays) < n - 2 * k:
            rays.append(pos)
            walk(pos + 1)
            rays.pop()

    walk(1)
    return tuple(sorted(out, key=lambda m: (m.arcs, m.rays)))


def count_matchings(n: int, k: int) -> int:
    """Closed form for |enumerate_matchings(n, k)|."""
    if k == 0:
        return 1
    return math.comb(n, k) - math.comb(n, k - 1)


def brute_force_matchings(n: int, k: int) -> set[Matching]:
    """Independent oracle: try every pairing of every 2k-subset, filter."""
    result: set[Matching] = set()
    for support in itertools.combinations(range(1, n + 1), 2 * k):
        rays = tuple(v for v in range(1, n + 1) if v not in support)
        for arcs in _all_pairings(list(support)):
            try:
                _check_noncrossing(arcs, rays)
            except (CrossingArcs, RayUnderArc):
                continue
            result.add(Matching(n, tuple(sorted(arcs)), rays))
    return result


def _all_pairings(vertices: list[int]) -> Iterator[list[Arc]]:
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for idx, other in enumerate(rest):
        sub = rest[:idx] + rest[idx + 1:]
        for tail in _all_pairings(sub):
            yield [(first, other)] + tail


def all_dotted_matchings(n: int, k: int, m: int | None = None) -> tuple[DottedMatching, ...]:
    """Every dotted matching of type (n-k, k); optionally fixed grading m."""
    out = []
    for base in enumerate_matchings(n, k):
        for r in range(k + 1):
            if m is not None and k - r != m:
                continue
            for dotted in itertools.combinations(base.arcs, r):
                out.append(DottedMatching(base, tuple(sorted(dotted))))
    return tuple(sorted(out, key=sort_key))


def standard_dotted_matchings(n: int, k: int, m: int | None = None) -> tuple[DottedMatching, ...]:
    return tuple(M for M in all_dotted_matchings(n, k, m) if M.is_standard)


def sort_key(M: DottedMatching):
    return (M.base.arcs, M.base.rays, M.dotted)


# --- completion and restriction --------------------------------------------

def complete(a: Matching) -> Matching:
    """Turn each ray into an arc anchored at new vertices on the left.

    The t-th ray (left to right) at position i_t becomes the arc
    (n-2k-t+1, i_t+n-2k); existing arcs shift right by n-2k.  The result
    has type (n-k, n-k) on 2(n-k) vertices and no rays.

    >>> complete(Matching(6, ((1, 2), (4, 5)), (3, 6))).arcs
    ((1, 8), (2, 5), (3, 4), (6, 7))
    """
    pad = len(a.rays)
    arcs = [(i + pad, j + pad) for i, j in a.arcs]
    for t, ray in enumerate(sorted(a.rays), start=1):
        arcs.append((pad - t + 1, ray + pad))
    return Matching(a.n + pad, tuple(sorted(arcs)), ())


def restrict(a: Matching, pad: int) -> Matching:
    """Remove the first ``pad`` vertices; cut arcs become rays.

    Inverse to :func:`complete` when ``pad = n - 2k``.  Raises
    :class:`NotInRestrictableSet` if some arc lies inside the prefix.
    """
    if pad < 0 or pad > a.n:
        raise DomainError(f"pad {pad} outside 0..{a.n}")
    arcs: list[Arc] = []
    rays: list[int] = []
    for i, j in a.arcs:
        if j <= pad:
            raise NotInRestrictableSet(f"arc ({i},{j}) inside removable prefix")
        if i <= pad:
            rays.append(j - pad)
        else:
            arcs.append((i - pad, j - pad))
    if a.rays:
        raise NotInRestrictableSet("input already has rays")
    return Matching(a.n - pad, tuple(sorted(arcs)), tuple(sorted(rays)))


def complete_dotted(M: DottedMatching) -> DottedMatching:
    """Completion carrying dot data: arcs born from rays come out dotted."""
    base = complete(M.base)
    pad = len(M.base.rays)
    dotted = {(i + pad, j + pad) for i, j in M.dotted}
    dotted |= {arc for arc in base.arcs if arc[0] <= pad}
    return DottedMatching(base, tuple(sorted(dotted)))


def restrict_dotted(M: DottedMatching, pad: int) -> DottedMatching:
    base = restrict(M.base, pad)
    dotted = []
    for i, j in M.dotted:
        if i > pad:
            dotted.append((i - pad, j - pad))
    return DottedMatching(base, tuple(sorted(dotted)))


# --- tableau bijection ------------------------------------------------------

def tableau_of(M: DottedMatching) -> StandardTableau:
    """Bottom row: right endpoints of undotted arcs; top row: the rest."""
    if not M.is_standard:
        raise NotStandard(f"{M} is not standard")
    bottom = tuple(sorted(j for _, j in M.undotted))
    top = tuple(v for v in range(1, M.n + 1) if v not in bottom)
    T = StandardTableau(top, bottom)
    T.check()
    return T


def matching_of(T: StandardTableau, k: int) -> DottedMatching:
    """Inverse bijection at arc count k: returns a standard dotted matching.

    Undotted arcs are drawn smallest bottom entry first, right endpoint at
    the entry and left endpoint at the nearest free vertex to its left.
    Rays fill the leftmost remaining positions; what is left pairs up into
    unnested dotted arcs.
    """
    T.check()
    n = T.n
    m = len(T.bottom)
    if not m <= k <= n // 2:
        raise ShapeMismatch(f"need {m} <= k <= {n // 2}, got k={k}")
    occupied: set[int] = set()
    undotted: list[Arc] = []
    for b in T.bottom:
        left = max((v for v in range(1, b) if v not in occupied), default=None)
        if left is None:
            raise ShapeMismatch(f"no free vertex left of bottom entry {b}")
        occupied.update((left, b))
        undotted.append((left, b))
    free = [v for v in range(1, n + 1) if v not in occupied]
    rays = tuple(free[: n - 2 * k])
    leftover = free[n - 2 * k:]
    dotted = tuple((leftover[i], leftover[i + 1]) for i in range(0, len(leftover), 2))
    M = validate(n, tuple(undotted) + dotted, rays, dotted)
    if not M.is_standard:
        raise ShapeMismatch(f"tableau {T} yields non-standard matching {M}")
    return M


def standard_layout(undotted_arcs: Iterable[Arc], n: int, k: int) -> DottedMatching:
    """The unique standard dotted matching with exactly these undotted arcs."""
    undotted = tuple(sorted(tuple(sorted(a)) for a in undotted_arcs))
    if len(undotted) > k:
        raise NoStandardCompletion(f"{len(undotted)} undotted arcs exceed k={k}")
    occupied = {v for arc in undotted for v in arc}
    if len(occupied) != 2 * len(undotted):
        raise NoStandardCompletion("undotted arcs share a vertex")
    free = [v for v in range(1, n + 1) if v not in occupied]
    rays = tuple(free[: n - 2 * k])
    leftover = free[n - 2 * k:]
    dotted = tuple((leftover[i], leftover[i + 1]) for i in range(0, len(leftover), 2))
    try:
        M = validate(n, undotted + dotted, rays, dotted)
    except Exception as exc:
        raise NoStandardCompletion(str(exc)) from exc
    if not M.is_standard or set(M.undotted) != set(undotted):
        raise NoStandardCompletion(f"no standard completion of {undotted}")
    return M


# --- codec -------------------------------------------------------------------

_TOKEN = re.compile(r"([udr])(\d+)(?:-(\d+))?$")


def parse_matching(text: str) -> DottedMatching:
    """Parse ``"<n>: u1-2 d3-6 r7"`` into a validated dotted matching."""
    head, sep, body = text.partition(":")
    if not sep:
        raise CodecSyntaxError("missing ':' after vertex count", 0)
    try:
        n = int(head.strip())
    except ValueError:
        raise CodecSyntaxError(f"bad vertex count {head.strip()!r}", 0) from None
    arcs: list[Arc] = []
    rays: list[int] = []
    dotted: list[Arc] = []
    offset = len(head) + 1
    pos = 0
    for raw in body.split():
        pos = body.index(raw, pos)
        m = _TOKEN.match(raw)
        if not m:
            raise CodecSyntaxError(f"bad item {raw!r}", offset + pos)
        kind, i_s, j_s = m.groups()
        if kind == "r":
            if j_s is not None:
                raise CodecSyntaxError(f"ray item {raw!r} has two vertices", offset + pos)
            rays.append(int(i_s))
        else:
            if j_s is None:
                raise CodecSyntaxError(f"arc item {raw!r} needs i-j", offset + pos)
            i, j = int(i_s), int(j_s)
            if not i < j:
                raise CodecSyntaxError(f"arc item {raw!r} needs i < j", offset + pos)
            arcs.append((i, j))
            if kind == "d":
                dotted.append((i, j))
        pos += len(raw)
    return validate(n, arcs, rays, dotted)


def format_matching(M: DottedMatching) -> str:
    """Canonical text form; items sorted by leftmost vertex."""
    dotted = set(M.dotted)
    items: list[tuple[int, str]] = []
    for i, j in M.base.arcs:
        items.append((i, f"{'d' if (i, j) in dotted else 'u'}{i}-{j}"))
    for r in M.base.rays:
        items.append((r, f"r{r}"))
    items.sort()
    return f"{M.n}: " + " ".join(s for _, s in items) if items else f"{M.n}:"
