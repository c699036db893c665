"""Two cell decompositions of a component subspace.

The arc-forest decomposition hangs cells on the nesting forest of the
arcs: one vertex per arc, an edge from each arc to its immediate
enclosing arc (exactly the pairs swappable by a single arrow move), roots
at the outermost arcs.  Choosing a subset J of edges-plus-roots pins one
sphere's worth per element, so the cell has real dimension 2(k - |J|).

The cartesian decomposition simply chooses which arcs are free: a subset
I of arcs gives a cell of dimension 2|I|, and these cells are in bijection
with the dotted matchings over the given matching (dotted = not in I).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagrams import is_arrow
from .errors import NotAnArrowPair
from .matchings import Arc, DottedMatching, Matching
from .subspaces import SignedPartitionSubspace, from_constraints, subspace_of

ForestElement = tuple  # ("edge", parent_arc, child_arc) | ("root", arc)


@dataclass(frozen=True)
class ArcForest:
    matching: Matching
    edges: tuple[tuple[Arc, Arc], ...]  # (parent, child) pairs
    roots: tuple[Arc, ...]

    @property
    def elements(self) -> tuple[ForestElement, ...]:
        return tuple(("edge",) + e for e in self.edges) + tuple(
            ("root", r) for r in self.roots
        )


def _immediate_parent(arc: Arc, arcs: tuple[Arc, ...]) -> Arc | None:
    i, j = arc
    candidates = [(p, q) for p, q in arcs if p < i and j < q]
    if not candidates:
        return None
    return min(candidates, key=lambda a: a[1] - a[0])


def arc_forest(a: Matching) -> ArcForest:
    """The nesting forest of a's arcs; |edges| + |roots| = k."""
    edges = []
    roots = []
    for arc in a.arcs:
        parent = _immediate_parent(arc, a.arcs)
        if parent is None:
            roots.append(arc)
        else:
            edges.append((parent, arc))
    return ArcForest(a, tuple(sorted(edges)), tuple(sorted(roots)))


def forest_cells(a: Matching) -> list[tuple[frozenset[ForestElement], int]]:
    """All 2^k cells (J, dimension) with dimension 2(k - |J|)."""
    forest = arc_forest(a)
    cells = []
    for r in range(len(forest.elements) + 1):
        for J in itertools.combinations(forest.elements, r):
            cells.append((frozenset(J), 2 * (a.k - len(J))))
    return cells


def forest_cell_subspace(a: Matching, J: frozenset[ForestElement]) -> SignedPartitionSubspace:
    """Constraint system of the closure of c(J): equalities and pins only."""
    space = subspace_of(a)
    rels = []
    pins = []
    for element in J:
        if element[0] == "edge":
            _, (v1, _), (w1, _) = element
            rels.append((v1, w1, 1))
        else:
            _, (v1, _) = element
            pins.append((v1, (-1) ** v1))
    return space.intersect(from_constraints(a.n, rels, pins))


def cartesian_cells(a: Matching) -> list[tuple[frozenset[Arc], int]]:
    """Cells keyed by the subset of free (undotted) arcs; dim = 2|I|."""
    cells = []
    for r in range(a.k + 1):
        for I in itertools.combinations(a.arcs, r):
            cells.append((frozenset(I), 2 * r))
    return cells


def dotted_matching_of_cell(a: Matching, free: frozenset[Arc]) -> DottedMatching:
    return DottedMatching(a, tuple(sorted(set(a.arcs) - free)))


def _classify_move(b: Matching, a: Matching):
    """For b -> a, return ("quad", i, j, k, l) or ("triple", i, j, k)."""
    if not is_arrow(b, a):
        raise NotAnArrowPair(f"{b} -> {a} is not an arrow move")
    if set(b.rays) == set(a.rays):
        (i, j), (k, l) = sorted(set(b.arcs) - set(a.arcs))
        return ("quad", i, j, k, l)
    (j, k), = set(b.arcs) - set(a.arcs)
    (i,) = set(b.rays) - set(a.rays)
    return ("triple", i, j, k)


def subcomplex_cells(a: Matching, b: Matching) -> list[tuple[frozenset[ForestElement], int]]:
    """The forest cells of a whose union is the intersection with b's space.

    Requires b -> a.  The move designates one forest element of a (the
    edge between the two rearranged arcs, or the root created next to the
    shifted ray); the subcomplex consists of the cells containing it.
    """
    move = _classify_move(b, a)
    forest = arc_forest(a)
    if move[0] == "quad":
        _, i, j, k, l = move
        designated = ("edge", (i, l), (j, k))
    else:
        _, i, j, k = move
        designated = ("root", (i, j))
    if designated not in forest.elements:
        raise NotAnArrowPair(f"move {move} does not match the forest of {a}")
    return [(J, dim) for J, dim in forest_cells(a) if designated in J]
