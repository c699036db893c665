"""Overlay diagrams and the arrow order on noncrossing matchings.

Gluing a matching ``a`` above the horizontal reflection of ``b`` produces a
1-manifold whose circles and lines control intersections of the associated
components and the distance between matchings.

The arrow relation ``a -> b`` replaces two unnested arcs of ``a`` by the
nested pair on the same four vertices, or shifts a ray one arc to the
right; its reflexive-transitive closure is the partial order used for the
homology presentation.
"""
from __future__ import annotations

import heapq
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import CycleDetected, InternalCheckError, NotFound, TypeMismatch
from .matchings import Arc, Matching, complete, enumerate_matchings, restrict


@dataclass(frozen=True)
class Component:
    kind: str                        # "circle" | "line"
    vertices: frozenset[int]
    ends: tuple[tuple[int, str], ...]  # for lines: ((vertex, "up"|"down"), ...)
    arcs_above: tuple[Arc, ...]      # arcs of a on this component
    arcs_below: tuple[Arc, ...]      # arcs of b on this component


@dataclass(frozen=True)
class GluedOneManifold:
    a: Matching
    b: Matching
    components: tuple[Component, ...]

    def __len__(self) -> int:
        return len(self.components)

    @property
    def circles(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == "circle")

    @property
    def lines(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == "line")

    @property
    def vertex_sets(self) -> tuple[frozenset[int], ...]:
        """The collection C_{a,b} of per-component vertex sets."""
        return tuple(c.vertices for c in self.components)


def _require_same_type(a: Matching, b: Matching) -> None:
    if a.n != b.n or a.k != b.k:
        raise TypeMismatch(
            f"matchings of types ({a.n - a.k},{a.k}) and ({b.n - b.k},{b.k})"
        )


def glue(a: Matching, b: Matching) -> GluedOneManifold:
    """Compute the circles and lines of the overlay of a over reflected b.

    Every vertex has one top connection (arc of a, or an upward ray end)
    and one bottom connection (arc of b, or a downward ray end), so the
    overlay is a disjoint union of paths and circles; component vertex
    sets are the connected components of the union of the two arc sets.
    """
    _require_same_type(a, b)
    parent = list(range(a.n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in a.arcs + b.arcs:
        parent[find(i)] = find(j)
    classes: dict[int, set[int]] = {}
    for v in range(1, a.n + 1):
        classes.setdefault(find(v), set()).add(v)
    components = []
    for vertices in classes.values():
        ends = sorted(
            [(v, "up") for v in a.rays if v in vertices]
            + [(v, "down") for v in b.rays if v in vertices]
        )
        comp = Component(
            kind="line" if ends else "circle",
            vertices=frozenset(vertices),
            ends=tuple(ends),
            arcs_above=tuple(arc for arc in a.arcs if arc[0] in vertices),
            arcs_below=tuple(arc for arc in b.arcs if arc[0] in vertices),
        )
        components.append(comp)
    components.sort(key=lambda c: min(c.vertices))
    return GluedOneManifold(a, b, tuple(components))


def compatible(a: Matching, b: Matching) -> bool:
    """True iff every line of the overlay has one up end and one down end."""
    glued = glue(a, b)
    for line in glued.lines:
        dirs = sorted(d for _, d in line.ends)
        if dirs != ["down", "up"]:
            return False
    return True


# --- arrow moves -------------------------------------------------------------

def _try_build(n: int, arcs: set[Arc], rays: set[int]) -> Matching | None:
    for (i, j) in arcs:
        for (p, q) in arcs:
            if (i, j) < (p, q) and (i < p < j < q or p < i < q < j):
                return None
    for r in rays:
        for (i, j) in arcs:
            if i < r < j:
                return None
    return Matching(n, tuple(sorted(arcs)), tuple(sorted(rays)))


def arrow_successors(a: Matching) -> tuple[Matching, ...]:
    """All b with a -> b: unnest->nest on two arcs, or ray shifted right."""
    out = []
    arcs = set(a.arcs)
    rays = set(a.rays)
    for (i, j) in a.arcs:
        for (p, q) in a.arcs:
            if j < p:  # unnested pair (i,j), (p,q) -> nested (i,q), (j,p)
                cand = _try_build(a.n, arcs - {(i, j), (p, q)} | {(i, q), (j, p)}, rays)
                if cand is not None:
                    out.append(cand)
    for r in a.rays:
        for (j, kk) in a.arcs:
            if r < j:  # ray r + arc (j,kk) -> arc (r,j) + ray kk
                cand = _try_build(a.n, arcs - {(j, kk)} | {(r, j)}, rays - {r} | {kk})
                if cand is not None:
                    out.append(cand)
    return tuple(sorted(set(out), key=lambda m: (m.arcs, m.rays)))


def is_arrow(a: Matching, b: Matching) -> bool:
    """True iff a -> b is a single arrow move."""
    if a.n != b.n or a.k != b.k or a == b:
        return False
    diff_a = set(a.arcs) - set(b.arcs)
    diff_b = set(b.arcs) - set(a.arcs)
    if set(a.rays) == set(b.rays):
        if len(diff_a) != 2 or len(diff_b) != 2:
            return False
        (i, j), (p, q) = sorted(diff_a)
        return j < p and diff_b == {(i, q), (j, p)}
    ray_a = set(a.rays) - set(b.rays)
    ray_b = set(b.rays) - set(a.rays)
    if len(diff_a) == len(diff_b) == 1 and len(ray_a) == len(ray_b) == 1:
        (j, kk), = diff_a
        (i2, j2), = diff_b
        (r,) = ray_a
        (s,) = ray_b
        return r < j and (i2, j2) == (r, j) and s == kk
    return False


@dataclass(frozen=True)
class ArrowGraph:
    nodes: tuple[Matching, ...]
    successors: dict
    predecessors: dict


@lru_cache(maxsize=None)
def arrow_graph(n: int, k: int) -> ArrowGraph:
    nodes = enumerate_matchings(n, k)
    succ = {a: arrow_successors(a) for a in nodes}
    pred: dict[Matching, list[Matching]] = {a: [] for a in nodes}
    for a, bs in succ.items():
        for b in bs:
            pred[b].append(a)
    pred = {a: tuple(sorted(v, key=lambda m: (m.arcs, m.rays))) for a, v in pred.items()}
    return ArrowGraph(nodes, succ, pred)


def linear_order(n: int, k: int, variant: int = 0) -> tuple[Matching, ...]:
    """A linear extension of the arrow order (Kahn's algorithm).

    ``variant`` selects the tie-break among ready nodes: 0 = ascending arc
    key, 1 = descending, >= 2 = seeded shuffle.  All variants are valid
    extensions; downstream results must not depend on the choice.
    """
    graph = arrow_graph(n, k)
    indeg = {a: len(graph.predecessors[a]) for a in graph.nodes}
    keys = {a: (a.arcs, a.rays) for a in graph.nodes}
    if variant == 1:
        rank_of = {a: i for i, a in enumerate(sorted(graph.nodes, key=keys.get, reverse=True))}
    elif variant >= 2:
        rng = random.Random(variant)
        shuffled = list(graph.nodes)
        rng.shuffle(shuffled)
        rank_of = {a: i for i, a in enumerate(shuffled)}
    else:
        rank_of = {a: i for i, a in enumerate(sorted(graph.nodes, key=keys.get))}
    heap = [(rank_of[a], a) for a in graph.nodes if indeg[a] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, a = heapq.heappop(heap)
        out.append(a)
        for b in graph.successors[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (rank_of[b], b))
    if len(out) != len(graph.nodes):
        raise CycleDetected("arrow relation is not acyclic")
    return tuple(out)


def reachable(a: Matching, b: Matching) -> bool:
    """True iff a == b or there is an arrow chain a -> ... -> b (a ⪯ b)."""
    _require_same_type(a, b)
    graph = arrow_graph(a.n, a.k)
    frontier = deque([a])
    seen = {a}
    while frontier:
        x = frontier.popleft()
        if x == b:
            return True
        for y in graph.successors[x]:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return False


# --- distance ----------------------------------------------------------------

def distance(a: Matching, b: Matching) -> int | float:
    """BFS distance in the undirected arrow graph; math.inf if disconnected.

    For compatible pairs the result is cross-checked against the component
    count formula n - k - |overlay|.
    """
    _require_same_type(a, b)
    d = _bfs_distance(a, b)
    if compatible(a, b):
        formula = a.n - a.k - len(glue(a, b))
        if d != formula:
            raise InternalCheckError(
                f"BFS distance {d} != component formula {formula} for {a}, {b}"
            )
    return d


def _bfs_distance(a: Matching, b: Matching) -> int | float:
    if a == b:
        return 0
    graph = arrow_graph(a.n, a.k)
    dist = {a: 0}
    frontier = deque([a])
    while frontier:
        x = frontier.popleft()
        for y in graph.successors[x] + graph.predecessors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == b:
                    return dist[y]
                frontier.append(y)
    return math.inf


def _bfs_path(a: Matching, b: Matching) -> list[Matching]:
    graph = arrow_graph(a.n, a.k)
    prev: dict[Matching, Matching] = {}
    dist = {a: 0}
    frontier = deque([a])
    while frontier and b not in dist:
        x = frontier.popleft()
        for y in graph.successors[x] + graph.predecessors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                prev[y] = x
                frontier.append(y)
    if b not in dist:
        raise NotFound(f"{a} and {b} are in different components")
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return list(reversed(path))


# --- minimal sequences ---------------------------------------------------------

FORWARD = "->"
BACKWARD = "<-"


@dataclass(frozen=True)
class MoveSequence:
    steps: tuple[Matching, ...]
    tags: tuple[str, ...]
    certified: bool

    def __len__(self) -> int:
        return len(self.tags)


def _tag(x: Matching, y: Matching) -> str:
    if is_arrow(x, y):
        return FORWARD
    if is_arrow(y, x):
        return BACKWARD
    raise InternalCheckError(f"{x} and {y} do not differ by one move")


def _narrowest_leftmost_sequence(a: Matching, b: Matching) -> list[Matching]:
    """Splitting sequence between two ray-free matchings.

    Repeatedly repairs the narrowest leftmost arc of b that is not yet an
    arc of the current matching; every move splits an overlay component.
    """
    steps = [a]
    current = a
    while True:
        unpaired = [arc for arc in b.arcs if arc not in current.arcs]
        if not unpaired:
            return steps
        i, j = min(unpaired, key=lambda arc: (arc[1] - arc[0], arc[0]))
        k2 = current.partner(i)
        l2 = current.partner(j)
        arcs = set(current.arcs)
        arcs -= {tuple(sorted((i, k2))), tuple(sorted((j, l2)))}
        arcs |= {(i, j), tuple(sorted((k2, l2)))}
        nxt = _try_build(current.n, arcs, set())
        if nxt is None:
            raise InternalCheckError(f"illegal repair move for {current} -> {b}")
        steps.append(nxt)
        current = nxt


def minimal_sequence(a: Matching, b: Matching) -> MoveSequence:
    """A distance-realizing move sequence from a to b.

    Compatible pairs use the constructive splitting algorithm on the
    completions and restrict back; every step then splits one overlay
    component and the result is certified.  Incompatible pairs fall back
    to a BFS shortest path, flagged non-certified.
    """
    _require_same_type(a, b)
    if a == b:
        return MoveSequence((a,), (), True)
    if not compatible(a, b):
        path = _bfs_path(a, b)
        tags = tuple(_tag(x, y) for x, y in zip(path, path[1:]))
        return MoveSequence(tuple(path), tags, False)
    pad = a.n - 2 * a.k
    lifted = _narrowest_leftmost_sequence(complete(a), complete(b))
    steps = tuple(restrict(x, pad) for x in lifted)
    tags = tuple(_tag(x, y) for x, y in zip(steps, steps[1:]))
    d = distance(a, b)
    if len(tags) != d:
        raise InternalCheckError(f"sequence length {len(tags)} != distance {d}")
    for x, y in zip(steps, steps[1:]):
        if len(glue(x, b)) != len(glue(y, b)) - 1:
            raise InternalCheckError("step does not split an overlay component")
    return MoveSequence(steps, tags, True)


# --- meet -----------------------------------------------------------------------

def meet(a: Matching, b: Matching) -> Matching:
    """A matching c with a ⪰ c ⪯ b and d(a,b) = d(a,c) + d(c,b).

    Constructive route: walk to arrow-predecessors of the current element
    while that shortens the distance to b; when no predecessor helps, an
    all-forward minimal sequence exists and the current element works.
    Falls back to exhaustive search (and NotFound) if verification fails.
    """
    _require_same_type(a, b)
    current = a
    d = distance(current, b)
    graph = arrow_graph(a.n, a.k)
    while d > 0:
        nxt = next(
            (p for p in graph.predecessors[current] if distance(p, b) == d - 1),
            None,
        )
        if nxt is None:
            break
        current, d = nxt, d - 1
    if _is_meet(a, b, current):
        return current
    for c in graph.nodes:
        if _is_meet(a, b, c):
            return c
    raise NotFound(f"no meet element for {a}, {b}")


def _is_meet(a: Matching, b: Matching, c: Matching) -> bool:
    return (
        reachable(c, a)
        and reachable(c, b)
        and distance(a, c) + distance(c, b) == distance(a, b)
    )
