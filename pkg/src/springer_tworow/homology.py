"""Homology of the two-row space as dotted matchings modulo local relations.

Generators: dotted matchings over all components of a fixed type (n-k, k),
graded by the number m of undotted arcs (degree 2m).  Relations come in
three local families attached to each arrow pair a -> b (a carries the
unnested configuration):

- Type I:   dot on one arc of the unnested pair, summed over both choices,
            equals the same for the nested pair.
- Type II:  both arcs dotted on either side are equal.
- Type III: a dotted arc and the ray it exchanges with under the triple
            move give equal diagrams.

Reduction to the standard basis is implemented twice: by exact row
reduction of the relation span and by a terminating rewriting system, and
the two must agree.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .diagrams import GluedOneManifold, arrow_graph, glue, is_arrow
from .errors import InhomogeneousClass, InternalCheckError, NotAnArrowPair
from .matchings import (
    Arc,
    DottedMatching,
    Matching,
    all_dotted_matchings,
    format_matching,
    sort_key,
    standard_dotted_matchings,
)


@dataclass(frozen=True)
class HomClass:
    """An integer formal sum of dotted matchings, homogeneous in grading."""

    n: int
    k: int
    terms: tuple[tuple[DottedMatching, int], ...]

    @staticmethod
    def of(M: DottedMatching, coeff: int = 1) -> "HomClass":
        return hom_class(M.n, M.k, {M: coeff})

    @property
    def coeffs(self) -> dict[DottedMatching, int]:
        return dict(self.terms)

    @property
    def grading(self) -> int:
        gradings = {M.m for M, _ in self.terms}
        if len(gradings) > 1:
            raise InhomogeneousClass(f"mixed gradings {sorted(gradings)}")
        return gradings.pop() if gradings else 0

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomClass") -> "HomClass":
        out = self.coeffs
        for M, c in other.terms:
            out[M] = out.get(M, 0) + c
        return hom_class(self.n, self.k, out)

    def __sub__(self, other: "HomClass") -> "HomClass":
        return self + other.scale(-1)

    def __neg__(self) -> "HomClass":
        return self.scale(-1)

    def scale(self, c: int) -> "HomClass":
        return hom_class(self.n, self.k, {M: c * v for M, v in self.terms})

    def __str__(self) -> str:
        return format_class(self)


def hom_class(n: int, k: int, coeffs: dict[DottedMatching, int]) -> HomClass:
    terms = tuple(
        (M, c) for M, c in sorted(coeffs.items(), key=lambda t: sort_key(t[0])) if c != 0
    )
    cls = HomClass(n, k, terms)
    cls.grading  # raises on mixed gradings
    return cls


def zero_class(n: int, k: int) -> HomClass:
    return HomClass(n, k, ())


def format_class(x: HomClass) -> str:
    if x.is_zero:
        return "0"
    parts = []
    for idx, (M, c) in enumerate(x.terms):
        mag = f"{abs(c)}·({format_matching(M)})"
        if idx == 0:
            parts.append(("-" if c < 0 else "") + mag)
        else:
            parts.append(("- " if c < 0 else "+ ") + mag)
    return " ".join(parts)


# --- relation instances -------------------------------------------------------

def _dotted(base: Matching, dotted: set[Arc]) -> DottedMatching:
    return DottedMatching(base, tuple(sorted(dotted)))


def relation_instances(n: int, k: int, m: int | None = None,
                       order: tuple[Matching, ...] | None = None) -> list[HomClass]:
    """Every local relation, optionally restricted to grading m.

    ``order`` only affects the listing order (used by order-independence
    diagnostics), never the span.
    """
    out: list[HomClass] = []
    graph = arrow_graph(n, k)
    for a in (order if order is not None else graph.nodes):
        for b in graph.successors[a]:
            shared = tuple(sorted(set(a.arcs) & set(b.arcs)))
            if set(a.rays) == set(b.rays):
                (i, j), (kk, l) = sorted(set(a.arcs) - set(b.arcs))
                nested_out, nested_in = (i, l), (j, kk)
                for r in range(len(shared) + 1):
                    for D in itertools.combinations(shared, r):
                        base_m = len(shared) - len(D)
                        dots = set(D)
                        if m is None or m == base_m + 1:
                            out.append(hom_class(n, k, {
                                _dotted(a, dots | {(i, j)}): 1,
                                _dotted(a, dots | {(kk, l)}): 1,
                                _dotted(b, dots | {nested_out}): -1,
                                _dotted(b, dots | {nested_in}): -1,
                            }))
                        if m is None or m == base_m:
                            out.append(hom_class(n, k, {
                                _dotted(a, dots | {(i, j), (kk, l)}): 1,
                                _dotted(b, dots | {nested_out, nested_in}): -1,
                            }))
            else:
                (j, kk), = set(a.arcs) - set(b.arcs)
                (i2, j2), = set(b.arcs) - set(a.arcs)
                for r in range(len(shared) + 1):
                    for D in itertools.combinations(shared, r):
                        if m is not None and m != len(shared) - len(D):
                            continue
                        dots = set(D)
                        out.append(hom_class(n, k, {
                            _dotted(a, dots | {(j, kk)}): 1,
                            _dotted(b, dots | {(i2, j2)}): -1,
                        }))
    return out


# --- reduction to the standard basis -----------------------------------------

@lru_cache(maxsize=None)
def _reduction_data(n: int, k: int, m: int):
    """Echelonized relation span with nonstandard columns leading."""
    nonstandard = [M for M in all_dotted_matchings(n, k, m) if not M.is_standard]
    standard = list(standard_dotted_matchings(n, k, m))
    columns = nonstandard + standard
    index = {M: i for i, M in enumerate(columns)}
    rows = []
    for rel in relation_instances(n, k, m):
        row = [0] * len(columns)
        for M, c in rel.terms:
            row[index[M]] = c
        rows.append(row)
    echelon, pivots = linalg.rref(rows)
    if any(p >= len(nonstandard) for p in pivots):
        raise InternalCheckError("relation pivot landed on a standard generator")
    if len(pivots) != len(nonstandard):
        raise InternalCheckError(
            f"relation rank {len(pivots)} != nonstandard count {len(nonstandard)}"
        )
    return columns, index, echelon, pivots, len(nonstandard)


def reduce_class(x: HomClass, method: str = "linear", check: bool = False) -> HomClass:
    """Coordinates of x over the standard basis of its grading.

    ``method`` is "linear" (row reduction of the relation span) or
    "rewrite" (oriented local rewriting); both give the same answer, and
    ``check=True`` runs both and asserts the agreement.
    """
    if x.is_zero:
        return x
    if check:
        linear = reduce_class(x, "linear")
        rewritten = reduce_class(x, "rewrite")
        if linear != rewritten:
            raise InternalCheckError(
                f"reduction routes disagree on {x}: {linear} vs {rewritten}"
            )
        return linear
    if all(M.is_standard for M, _ in x.terms):
        return x
    if method == "rewrite":
        return _reduce_by_rewriting(x)
    m = x.grading
    columns, index, echelon, pivots, n_nonstd = _reduction_data(x.n, x.k, m)
    vec = [0] * len(columns)
    for M, c in x.terms:
        vec[index[M]] = c
    reduced = linalg.reduce_against(vec, echelon, pivots)
    if any(reduced[i] != 0 for i in range(n_nonstd)):
        raise InternalCheckError("reduction left a nonstandard coordinate")
    coeffs = {}
    for i in range(n_nonstd, len(columns)):
        if reduced[i] != 0:
            if Fraction(reduced[i]).denominator != 1:
                raise InternalCheckError(f"non-integer reduced coordinate {reduced[i]}")
            coeffs[columns[i]] = int(reduced[i])
    return hom_class(x.n, x.k, coeffs)


def reduce_class_ordered(x: HomClass, order: tuple[Matching, ...]) -> HomClass:
    """Reduce with the relation matrix assembled in the given node order.

    Diagnostic path for order-independence checks; mathematically the
    answer must match :func:`reduce_class`.
    """
    if x.is_zero or all(M.is_standard for M, _ in x.terms):
        return x
    m = x.grading
    nonstandard = [M for M in all_dotted_matchings(x.n, x.k, m) if not M.is_standard]
    standard = list(standard_dotted_matchings(x.n, x.k, m))
    columns = nonstandard + standard
    index = {M: i for i, M in enumerate(columns)}
    rows = []
    for rel in relation_instances(x.n, x.k, m, order=order):
        row = [0] * len(columns)
        for M, c in rel.terms:
            row[index[M]] = c
        rows.append(row)
    echelon, pivots = linalg.rref(rows)
    vec = [0] * len(columns)
    for M, c in x.terms:
        vec[index[M]] = c
    reduced = linalg.reduce_against(vec, echelon, pivots)
    coeffs = {}
    for i, value in enumerate(reduced):
        if value != 0:
            if Fraction(value).denominator != 1:
                raise InternalCheckError(f"non-integer ordered coordinate {value}")
            coeffs[columns[i]] = int(value)
    if any(not M.is_standard for M in coeffs):
        raise InternalCheckError("ordered reduction left a nonstandard coordinate")
    return hom_class(x.n, x.k, coeffs)


def _nesting_violation(M: DottedMatching) -> Arc | None:
    """A dotted arc nested beneath some arc (deepest first), or None."""
    worst = None
    worst_depth = 0
    for d in M.dotted:
        depth = sum(1 for i, j in M.base.arcs if i < d[0] and d[1] < j)
        if depth > worst_depth:
            worst, worst_depth = d, depth
    return worst


def _ray_violation(M: DottedMatching) -> tuple[Arc, int] | None:
    """Rightmost dotted arc with a ray to its right, and the nearest ray."""
    best = None
    for x, y in M.dotted:
        rays_right = [r for r in M.base.rays if r > y]
        if rays_right:
            if best is None or x > best[0][0]:
                best = ((x, y), min(rays_right))
    return best


def rewrite_step(M: DottedMatching, rng: random.Random | None = None) -> HomClass | None:
    """One oriented relation application, or None when M is standard.

    Nesting violations rewrite via Type I/II against the immediate parent;
    ray violations shift the ray left over the rightmost dotted arc via
    Type III.  With an rng, a uniformly random applicable safe rewrite is
    chosen instead of the default priority, for confluence testing.
    """
    candidates = []
    dotted = set(M.dotted)
    for child in M.dotted:
        parents = [(i, j) for i, j in M.base.arcs if i < child[0] and child[1] < j]
        if not parents:
            continue
        i, l = min(parents, key=lambda a: a[1] - a[0])
        j, kk = child
        unnested = {(i, j), (kk, l)}
        rest = dotted - {child} - {(i, l)}
        base_arcs = set(M.base.arcs) - {(i, l), (j, kk)} | unnested
        new_base = Matching(M.n, tuple(sorted(base_arcs)), M.base.rays)
        if (i, l) in dotted:
            candidates.append(hom_class(M.n, M.k, {
                _dotted(new_base, rest | unnested): 1,
            }))
        else:
            candidates.append(hom_class(M.n, M.k, {
                _dotted(new_base, rest | {(i, j)}): 1,
                _dotted(new_base, rest | {(kk, l)}): 1,
                _dotted(M.base, rest | {(i, l)}): -1,
            }))
        if rng is None:
            break
    if not candidates or rng is not None:
        viol = _ray_violation(M)
        if viol is not None:
            (x, y), r = viol
            unnested = not any(i < x and y < j for i, j in M.base.arcs)
            gap_clear = not any(y < dx[0] and dx[1] < r for dx in dotted)
            if unnested and gap_clear:
                base_arcs = set(M.base.arcs) - {(x, y)} | {(y, r)}
                rays = set(M.base.rays) - {r} | {x}
                new_base = Matching(M.n, tuple(sorted(base_arcs)), tuple(sorted(rays)))
                candidates.append(hom_class(M.n, M.k, {
                    _dotted(new_base, dotted - {(x, y)} | {(y, r)}): 1,
                }))
    if not candidates:
        return None
    return candidates[0] if rng is None else rng.choice(candidates)


def _reduce_by_rewriting(x: HomClass, rng: random.Random | None = None) -> HomClass:
    done: dict[DottedMatching, int] = {}
    work = x.coeffs
    while work:
        M = next(iter(sorted(work, key=sort_key)))
        if rng is not None:
            M = rng.choice(sorted(work, key=sort_key))
        c = work.pop(M)
        if c == 0:
            continue
        step = rewrite_step(M, rng)
        if step is None:
            done[M] = done.get(M, 0) + c
            continue
        for N, cn in step.terms:
            work[N] = work.get(N, 0) + c * cn
    return hom_class(x.n, x.k, done)


def reduce_by_rewriting(x: HomClass, rng: random.Random | None = None) -> HomClass:
    return _reduce_by_rewriting(x, rng)


# --- Betti numbers -------------------------------------------------------------

def betti(n: int, k: int) -> list[int]:
    """Rank of each H_{2m}, m = 0..k, as standard-basis counts."""
    return [len(standard_dotted_matchings(n, k, m)) for m in range(k + 1)]


# --- inclusion pushforward ------------------------------------------------------

def pushforward_inclusion(a: Matching, b: Matching,
                          free_circles: frozenset[int] | set[int]) -> HomClass:
    """Image in H(S_a) of a product class on S_a ∩ S_b, for an arrow pair.

    The class is specified by the set of overlay-circle indices (into
    ``glue(a, b).circles``) carrying the free sphere factor.  A pinned
    circle dots all its arcs from a; a free circle contributes the sum
    over its arcs of (that arc undotted, its circle-mates dotted); lines
    are always pinned.
    """
    if not (is_arrow(b, a) or is_arrow(a, b)):
        raise NotAnArrowPair(f"{a} and {b} are not one arrow move apart")
    glued = glue(a, b)
    return pushforward_from_overlay(glued, "above", free_circles)


def pushforward_from_overlay(glued: GluedOneManifold, side: str,
                             free_circles: frozenset[int] | set[int]) -> HomClass:
    target = glued.a if side == "above" else glued.b
    circles = glued.circles
    bad = set(free_circles) - set(range(len(circles)))
    if bad:
        raise InternalCheckError(f"free circle indices {sorted(bad)} out of range")
    pinned_arcs: set[Arc] = set()
    free_groups: list[tuple[Arc, ...]] = []
    for idx, comp in enumerate(circles):
        arcs = comp.arcs_above if side == "above" else comp.arcs_below
        if idx in free_circles:
            free_groups.append(arcs)
        else:
            pinned_arcs |= set(arcs)
    for comp in glued.lines:
        pinned_arcs |= set(comp.arcs_above if side == "above" else comp.arcs_below)
    coeffs: dict[DottedMatching, int] = {}
    for choice in itertools.product(*free_groups) if free_groups else [()]:
        dotted = set(target.arcs) - set(choice)
        M = _dotted(target, dotted)
        coeffs[M] = coeffs.get(M, 0) + 1
    return hom_class(target.n, target.k, coeffs)


# --- presentation via the boundary map ------------------------------------------

def psi_minus_rows(n: int, k: int, m: int,
                   order: tuple[Matching, ...] | None = None) -> tuple[list, list]:
    """Rows of the degree-2m block of the difference-of-inclusions map.

    Returns (columns, rows) where columns enumerate all dotted matchings
    of grading m and each row is the image of one basis class of one
    arrow-pair intersection.
    """
    columns = list(all_dotted_matchings(n, k, m))
    index = {M: i for i, M in enumerate(columns)}
    graph = arrow_graph(n, k)
    nodes = order if order is not None else graph.nodes
    rows = []
    for b in nodes:
        for c in graph.successors[b]:
            glued = glue(b, c)
            n_circles = len(glued.circles)
            for free in itertools.combinations(range(n_circles), m):
                cls = pushforward_from_overlay(glued, "above", frozenset(free)) - \
                    pushforward_from_overlay(glued, "below", frozenset(free))
                row = [0] * len(columns)
                for M, coeff in cls.terms:
                    row[index[M]] = coeff
                rows.append(row)
    return columns, rows


def presentation_betti(n: int, k: int,
                       order: tuple[Matching, ...] | None = None) -> list[int]:
    """Betti numbers as cokernel ranks of the difference-of-inclusions map."""
    out = []
    for m in range(k + 1):
        columns, rows = psi_minus_rows(n, k, m, order)
        out.append(len(columns) - linalg.rank(rows))
    return out
