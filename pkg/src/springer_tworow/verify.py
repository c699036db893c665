"""Named invariant suites for every module, runnable at a chosen depth.

Each check raises AssertionError (with context) on failure; run_all
collects results.  Depth caps below are the exhaustive bounds at which
each property is asserted; the CLI's -nmax lowers them uniformly.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable

from . import action, cells, diagrams, homology, skein, subspaces, tabloids
from .homology import HomClass
from .matchings import (
    all_dotted_matchings,
    brute_force_matchings,
    complete,
    complete_dotted,
    count_matchings,
    enumerate_matchings,
    matching_of,
    restrict,
    standard_dotted_matchings,
    standard_layout,
    tableau_of,
    format_matching,
    parse_matching,
)
from .permutations import Permutation, adjacent, from_word, identity
from .tabloids import f_embed, matching_vector, permute, polytabloid, shifted_permutation, zeta


def _types(n_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        for k in range(0, n // 2 + 1):
            yield n, k


# --- matching-core ------------------------------------------------------------

def check_enumeration_counts(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 10)):
        got = enumerate_matchings(n, k)
        assert len(got) == count_matchings(n, k), (n, k)
        assert len(set(got)) == len(got), (n, k)
        if n <= min(n_max, 8):
            assert set(got) == brute_force_matchings(n, k), (n, k)


def check_arc_parity(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 10)):
        for a in enumerate_matchings(n, k):
            for i, j in a.arcs:
                assert (i + j) % 2 == 1, (a, (i, j))


def check_completion_restriction(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        seen = set()
        pad = n - 2 * k
        for a in enumerate_matchings(n, k):
            comp = complete(a)
            assert comp not in seen, "completion not injective"
            seen.add(comp)
            assert comp.k == n - k and not comp.rays
            assert restrict(comp, pad) == a
        n2 = 2 * (n - k)
        for b in enumerate_matchings(n2, n - k):
            if all(arc[1] > pad for arc in b.arcs):
                assert complete(restrict(b, pad)) == b


def check_tableau_bijection(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 9)):
        for m in range(k + 1):
            standards = standard_dotted_matchings(n, k, m)
            assert len(standards) == count_matchings(n, m), (n, k, m)
            tableaux = set()
            for M in standards:
                T = tableau_of(M)
                assert matching_of(T, k) == M
                tableaux.add(T)
            assert len(tableaux) == len(standards)


def check_standard_layout(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        for m in range(k + 1):
            for M in standard_dotted_matchings(n, k, m):
                built = standard_layout(M.undotted, n, k)
                assert built == M, (M, built)


def check_codec_roundtrip(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for M in all_dotted_matchings(n, k):
            assert parse_matching(format_matching(M)) == M


# --- diagram-combinatorics -------------------------------------------------------

def check_ray_pairing(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        for a in enumerate_matchings(n, k):
            for b in enumerate_matchings(n, k):
                if not diagrams.compatible(a, b):
                    continue
                glued = diagrams.glue(a, b)
                for t, (ra, rb) in enumerate(zip(a.rays, b.rays)):
                    line = next(c for c in glued.lines if ra in c.vertices)
                    assert rb in line.vertices, (a, b, t)


def check_distance_formula(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        for a in enumerate_matchings(n, k):
            for b in enumerate_matchings(n, k):
                if diagrams.compatible(a, b):
                    d = diagrams.distance(a, b)  # internally cross-checked
                    assert d == n - k - len(diagrams.glue(a, b))


def check_component_steps(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        ms = enumerate_matchings(n, k)
        graph = diagrams.arrow_graph(n, k)
        for a in ms:
            for b in ms:
                assert len(diagrams.glue(a, b)) <= n - k
                # every single move changes the overlay count by exactly 1
                for y in graph.successors[a]:
                    assert abs(len(diagrams.glue(a, b)) - len(diagrams.glue(y, b))) == 1
                if a == b or not diagrams.compatible(a, b):
                    continue
                seq = diagrams.minimal_sequence(a, b)
                assert seq.certified and len(seq) == diagrams.distance(a, b)
                for x, y in zip(seq.steps, seq.steps[1:]):
                    assert len(diagrams.glue(x, b)) == len(diagrams.glue(y, b)) - 1


def check_winding_parity(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        ms = enumerate_matchings(n, k)
        for a in ms:
            for b in ms:
                glued = diagrams.glue(a, b)
                for comp in glued.circles:
                    arcs = comp.arcs_above
                    for (i, l), (j, kk) in itertools.permutations(arcs, 2):
                        if not (i < j and kk < l):
                            continue
                        between_same = any(
                            i < x < j and kk < y < l for x, y in arcs
                            if (x, y) not in ((i, l), (j, kk))
                        )
                        if between_same:
                            continue
                        between_all = sum(
                            1 for x, y in a.arcs if i < x < j and kk < y < l
                        )
                        assert between_all % 2 == 0, (a, b, (i, l), (j, kk))


def check_linear_extension(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        for variant in (0, 1, 2):
            order = diagrams.linear_order(n, k, variant)
            position = {a: i for i, a in enumerate(order)}
            for a in order:
                for b in diagrams.arrow_successors(a):
                    assert position[a] < position[b]


def check_meet(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        ms = enumerate_matchings(n, k)
        for a in ms:
            for b in ms:
                if not diagrams.compatible(a, b):
                    continue
                c = diagrams.meet(a, b)
                assert diagrams.reachable(c, a) and diagrams.reachable(c, b)
                assert diagrams.distance(a, c) + diagrams.distance(c, b) == diagrams.distance(a, b)


# --- sphere-subspaces ---------------------------------------------------------------

def check_fung_and_circles(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        ms = enumerate_matchings(n, k)
        spaces = {a: subspaces.subspace_of(a) for a in ms}
        for a in ms:
            assert spaces[a].dimension == 2 * k
            for b in ms:
                inter = spaces[a].intersect(spaces[b])
                if diagrams.compatible(a, b):
                    assert not inter.empty
                    assert inter.free_class_count == len(diagrams.glue(a, b).circles)
                else:
                    assert inter.empty, (a, b)


def check_intersect_triple(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        ms = enumerate_matchings(n, k)
        spaces = {a: subspaces.subspace_of(a) for a in ms}
        for a in ms:
            for b in ms:
                if not diagrams.compatible(a, b):
                    continue
                dab = diagrams.distance(a, b)
                for c in ms:
                    if diagrams.distance(a, c) == dab + diagrams.distance(b, c):
                        lhs = spaces[a].intersect(spaces[c])
                        rhs = lhs.intersect(spaces[b])
                        assert lhs == rhs, (a, b, c)


def check_intersection_witness(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        order = diagrams.linear_order(n, k)
        spaces = {a: subspaces.subspace_of(a) for a in order}
        graph = diagrams.arrow_graph(n, k)
        for idx, a in enumerate(order):
            for b in order[:idx]:
                inter = spaces[a].intersect(spaces[b])
                if inter.empty:
                    continue
                witnesses = [
                    a1 for a1 in graph.predecessors[a]
                    if spaces[a].intersect(spaces[a1]).contains(inter)
                ]
                assert witnesses, (a, b)


def check_pointmaps(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 6)):
        for a in enumerate_matchings(n, k):
            plain = subspaces.subspace_of(a)
            primed = subspaces.subspace_of(a, "primed")
            assert plain.apply_gamma() == primed
            assert plain.apply_gamma().apply_gamma() == plain
            target = 2 * (n - k)
            assert plain.apply_eta(target).apply_gamma() == plain.apply_gamma().apply_iota(target)


# --- cell-decompositions ----------------------------------------------------------

def check_cell_counts(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        for a in enumerate_matchings(n, k):
            forest = cells.arc_forest(a)
            assert len(forest.edges) + len(forest.roots) == k
            fc = cells.forest_cells(a)
            cc = cells.cartesian_cells(a)
            assert len(fc) == len(cc) == 2 ** k
            for cell_list in (fc, cc):
                by_dim: dict[int, int] = {}
                for _, dim in cell_list:
                    by_dim[dim] = by_dim.get(dim, 0) + 1
                assert by_dim == {2 * j: math.comb(k, j) for j in range(k + 1)}


def check_forest_edges_are_moves(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for a in enumerate_matchings(n, k):
            forest = cells.arc_forest(a)
            for (i, l), (j, kk) in forest.edges:
                arcs = set(a.arcs) - {(i, l), (j, kk)} | {(i, j), (kk, l)}
                b = diagrams._try_build(n, arcs, set(a.rays))
                assert b is not None and diagrams.is_arrow(b, a), (a, (i, l), (j, kk))


def check_subcomplexes(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        graph = diagrams.arrow_graph(n, k)
        for b in graph.nodes:
            for a in graph.successors[b]:
                inter = subspaces.subspace_of(a).intersect(subspaces.subspace_of(b))
                sub = cells.subcomplex_cells(a, b)
                circles = len(diagrams.glue(a, b).circles)
                poly: dict[int, int] = {}
                for J, dim in sub:
                    assert inter.contains(cells.forest_cell_subspace(a, J)), (a, b, J)
                    poly[dim] = poly.get(dim, 0) + 1
                assert poly == {2 * j: math.comb(circles, j) for j in range(circles + 1)}
                minimal = min(sub, key=lambda t: len(t[0]))[0]
                assert cells.forest_cell_subspace(a, minimal) == inter


# --- homology-presentation ----------------------------------------------------------

def check_relation_homogeneity(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for rel in homology.relation_instances(n, k):
            rel.grading  # raises if mixed


def check_reduce_agreement(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for M in all_dotted_matchings(n, k):
            x = HomClass.of(M)
            linear = homology.reduce_class(x)
            rewrite = homology.reduce_by_rewriting(x)
            assert linear == rewrite, M
            shuffled = homology.reduce_by_rewriting(x, rng=random.Random(rng.randint(0, 10 ** 9)))
            assert shuffled == linear, M
            assert all(N.is_standard for N, _ in linear.terms)


def check_relations_die(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for rel in homology.relation_instances(n, k):
            assert homology.reduce_class(rel).is_zero, rel


def check_relation_span_matches_boundary(n_max: int, rng) -> None:
    from . import linalg
    for n, k in _types(min(n_max, 7)):
        for m in range(k + 1):
            columns, rows = homology.psi_minus_rows(n, k, m)
            index = {M: i for i, M in enumerate(columns)}
            rel_rows = []
            for rel in homology.relation_instances(n, k, m):
                row = [0] * len(columns)
                for M, c in rel.terms:
                    row[index[M]] = c
                rel_rows.append(row)
            assert linalg.row_space_equal(rows, rel_rows), (n, k, m)


def check_betti_both_ways(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 8)):
        expected = [count_matchings(n, m) for m in range(k + 1)]
        assert homology.betti(n, k) == expected, (n, k)
        assert homology.presentation_betti(n, k) == expected, (n, k)


def check_order_independence(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        results = []
        for variant in (0, 1, 2):
            order = diagrams.linear_order(n, k, variant)
            results.append(homology.presentation_betti(n, k, order))
        assert results[0] == results[1] == results[2], (n, k)


def check_zeta_kills_relations(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for rel in homology.relation_instances(n, k):
            assert zeta(rel).is_zero, rel


def check_zeta_reduce_compatible(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for M in all_dotted_matchings(n, k):
            x = HomClass.of(M)
            assert zeta(x) == zeta(homology.reduce_class(x)), M


# --- specht-tabloids ------------------------------------------------------------------

def check_spanning_sets_independent(n_max: int, rng) -> None:
    from . import linalg
    for n, k in _types(min(n_max, 8)):
        for m in range(k + 1):
            standards = standard_dotted_matchings(n, k, m)
            t_rows = [polytabloid(tableau_of(M)).to_row() for M in standards]
            m_rows = [matching_vector(M).to_row() for M in standards]
            assert linalg.rank(t_rows) == len(standards)
            assert linalg.rank(m_rows) == len(standards)


def check_permute_action(n_max: int, rng) -> None:
    n = min(n_max, 6)
    for _ in range(20):
        m = rng.randint(0, n // 2)
        keys = list(tabloids.tabloid_keys(n, m))
        v = tabloids.tabloid_vector(
            n, m, {keys[rng.randrange(len(keys))]: rng.randint(-3, 3) for _ in range(3)}
        )
        sigma = Permutation(tuple(rng.sample(range(1, n + 1), n)))
        tau = Permutation(tuple(rng.sample(range(1, n + 1), n)))
        assert permute(sigma * tau, v) == permute(sigma, permute(tau, v))
        assert permute(identity(n), v) == v


def check_matching_vector_depends_on_undotted(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 6)):
        by_undotted: dict[tuple, object] = {}
        for M in all_dotted_matchings(n, k):
            vec = matching_vector(M)
            seen = by_undotted.setdefault(M.undotted, vec)
            assert vec == seen, M


def check_f_embed(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 5)):
        pad = n - 2 * k
        for m in range(k + 1):
            for M in standard_dotted_matchings(n, k, m):
                assert f_embed(matching_vector(M), pad) == matching_vector(complete_dotted(M))
        for _ in range(5):
            m = rng.randint(0, k)
            keys = list(tabloids.tabloid_keys(n, m))
            v = tabloids.tabloid_vector(
                n, m, {keys[rng.randrange(len(keys))]: rng.randint(-3, 3)}
            )
            sigma = Permutation(tuple(rng.sample(range(1, n + 1), n)))
            lhs = f_embed(permute(sigma, v), pad)
            rhs = permute(shifted_permutation(sigma, pad), f_embed(v, pad))
            assert lhs == rhs


def check_modules_equal(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 7)):
        for m in range(k + 1):
            assert tabloids.modules_equal(n, m, k).equal, (n, m, k)


# --- springer-action -------------------------------------------------------------------

def check_action_graded_and_group(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 6), n_min=2):
        for m in range(k + 1):
            basis = standard_dotted_matchings(n, k, m)
            if not basis:
                continue
            for _ in range(5):
                word1 = skein.random_word(n, 4, rng)
                word2 = skein.random_word(n, 4, rng)
                x = HomClass.of(basis[rng.randrange(len(basis))])
                lhs = action.act(from_word(word1, n) * from_word(word2, n), x)
                rhs = action.act(from_word(word1, n), action.act(from_word(word2, n), x))
                assert lhs == rhs
                assert lhs.is_zero or lhs.grading == m


def check_gamma_agreement(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 5), n_min=2):
        for m in range(k + 1):
            for M in standard_dotted_matchings(n, k, m):
                for i in range(1, n):
                    sigma = adjacent(n, i)
                    assert action.act(sigma, HomClass.of(M)) == action.act_via_gamma(sigma, M)


def check_eta_transport(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 5), n_min=2):
        pad = n - 2 * k
        for m in range(k + 1):
            for M in standard_dotted_matchings(n, k, m):
                for i in range(1, n):
                    sigma = adjacent(n, i)
                    lhs = f_embed(zeta(action.act(sigma, HomClass.of(M))), pad)
                    rhs = permute(shifted_permutation(sigma, pad), f_embed(zeta(HomClass.of(M)), pad))
                    assert lhs == rhs, (M, i)


def check_image_stability(n_max: int, rng) -> None:
    from .linalg import in_row_space
    for n, k in _types(min(n_max, 5), n_min=2):
        if k == n // 2 and n % 2 == 0:
            continue  # eta is the identity there
        pad = n - 2 * k
        n2, k2 = 2 * (n - k), n - k
        for m in range(k + 1):
            images = [
                homology.reduce_class(HomClass.of(complete_dotted(M)))
                for M in standard_dotted_matchings(n, k, m)
            ]
            big_basis = standard_dotted_matchings(n2, k2, m)
            index = {M: i for i, M in enumerate(big_basis)}

            def row_of(cls: HomClass) -> list[int]:
                row = [0] * len(big_basis)
                for M, c in cls.terms:
                    row[index[M]] = c
                return row

            span = [row_of(cls) for cls in images]
            for cls in images:
                for i in range(pad + 1, n2):
                    moved = action.act(adjacent(n2, i), cls)
                    assert in_row_space(row_of(moved), span), (n, k, m, i)


def check_characters(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 6), n_min=2):
        report = action.character_table_check(n, k)
        assert report.ok, report.failures


def check_chart_anchors(n_max: int, rng) -> None:
    for n, k in _types(min(n_max, 5), n_min=2):
        chart = action.derive_chart(n, k)
        assert chart.ok, chart.anchor_failures


# --- skein ---------------------------------------------------------------------------

def check_skein_calibration(n_max: int, rng) -> None:
    convention = skein.calibrate(max(3, min(n_max, 4)))
    assert convention == skein.CALIBRATED_CONVENTION


def check_skein_agreement(n_max: int, rng) -> None:
    convention = skein.CALIBRATED_CONVENTION
    for n, k in _types(min(n_max, 5), n_min=2):
        for m in range(k + 1):
            for M in standard_dotted_matchings(n, k, m):
                for i in range(1, n):
                    assert skein.skein_matches_action([i], M, convention)


def check_skein_random_words(n_max: int, rng) -> None:
    convention = skein.CALIBRATED_CONVENTION
    for n, k in _types(min(n_max, 4), n_min=2):
        basis = standard_dotted_matchings(n, k)
        for _ in range(100):
            word = skein.random_word(n, 6, rng)
            M = basis[rng.randrange(len(basis))]
            assert skein.skein_matches_action(word, M, convention)


def check_skein_circle_confluence(n_max: int, rng) -> None:
    convention = skein.CALIBRATED_CONVENTION
    for n, k in _types(min(n_max, 4), n_min=2):
        for M in standard_dotted_matchings(n, k)[:3]:
            for _ in range(5):
                word = skein.random_word(n, 5, rng)
                tangle = skein.flatten(word, n)
                for diagram in skein.expand_resolutions(M, tangle, convention):
                    base = diagram.circle_scalar()
                    dots = list(diagram.circle_dots)
                    for _ in range(3):
                        rng.shuffle(dots)
                        value = 1
                        for d in dots:
                            value *= skein.circle_rule(d)
                        assert value == base


def check_skein_word_invariance(n_max: int, rng) -> None:
    convention = skein.CALIBRATED_CONVENTION
    for n, k in _types(min(n_max, 4), n_min=2):
        for _ in range(20):
            sigma = Permutation(tuple(rng.sample(range(1, n + 1), n)))
            words = {tuple(sigma.word())}
            # another reduced word: conjugate the bubble sort by reversing ties
            alt = list(sigma.word())
            for i in range(len(alt) - 1):
                a, b = alt[i], alt[i + 1]
                if abs(a - b) >= 2:
                    alt[i], alt[i + 1] = b, a
                    break
            words.add(tuple(alt))
            for M in standard_dotted_matchings(n, k)[:4]:
                results = {
                    str(skein.resolve_evaluate(M, skein.flatten(w, n), convention))
                    for w in words
                    if from_word(w, n) == sigma
                }
                assert len(results) == 1, (sigma, M)


# --- registry ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    fn: Callable


CHECKS: list[Check] = [
    Check("matching.enumeration-counts", check_enumeration_counts),
    Check("matching.arc-parity", check_arc_parity),
    Check("matching.completion-restriction", check_completion_restriction),
    Check("matching.tableau-bijection", check_tableau_bijection),
    Check("matching.standard-layout", check_standard_layout),
    Check("matching.codec-roundtrip", check_codec_roundtrip),
    Check("diagram.ray-pairing", check_ray_pairing),
    Check("diagram.distance-formula", check_distance_formula),
    Check("diagram.component-steps", check_component_steps),
    Check("diagram.winding-parity", check_winding_parity),
    Check("diagram.linear-extension", check_linear_extension),
    Check("diagram.meet", check_meet),
    Check("subspace.fung-and-circles", check_fung_and_circles),
    Check("subspace.triple-intersection", check_intersect_triple),
    Check("subspace.intersection-witness", check_intersection_witness),
    Check("subspace.pointmaps", check_pointmaps),
    Check("cells.counts", check_cell_counts),
    Check("cells.forest-edges", check_forest_edges_are_moves),
    Check("cells.subcomplexes", check_subcomplexes),
    Check("homology.relation-homogeneity", check_relation_homogeneity),
    Check("homology.reduce-agreement", check_reduce_agreement),
    Check("homology.relations-die", check_relations_die),
    Check("homology.relation-span", check_relation_span_matches_boundary),
    Check("homology.betti-both-ways", check_betti_both_ways),
    Check("homology.order-independence", check_order_independence),
    Check("zeta.kills-relations", check_zeta_kills_relations),
    Check("zeta.reduce-compatible", check_zeta_reduce_compatible),
    Check("tabloid.spanning-sets", check_spanning_sets_independent),
    Check("tabloid.permute-action", check_permute_action),
    Check("tabloid.undotted-dependence", check_matching_vector_depends_on_undotted),
    Check("tabloid.f-embed", check_f_embed),
    Check("tabloid.modules-equal", check_modules_equal),
    Check("action.graded-group-laws", check_action_graded_and_group),
    Check("action.gamma-agreement", check_gamma_agreement),
    Check("action.eta-transport", check_eta_transport),
    Check("action.image-stability", check_image_stability),
    Check("action.characters", check_characters),
    Check("action.chart-anchors", check_chart_anchors),
    Check("skein.calibration", check_skein_calibration),
    Check("skein.agreement", check_skein_agreement),
    Check("skein.random-words", check_skein_random_words),
    Check("skein.circle-confluence", check_skein_circle_confluence),
    Check("skein.word-invariance", check_skein_word_invariance),
]


def run_all(n_max: int, seed: int = 0, names: list[str] | None = None):
    """Run the suites; returns (all_ok, [(name, ok, message)])."""
    results = []
    ok_all = True
    for check in CHECKS:
        if names and check.name not in names:
            continue
        rng = random.Random(seed)
        try:
            check.fn(n_max, rng)
            results.append((check.name, True, ""))
        except AssertionError as exc:
            ok_all = False
            results.append((check.name, False, str(exc)))
        except Exception as exc:  # a crashed check must not abort the suite
            ok_all = False
            results.append((check.name, False, f"{type(exc).__name__}: {exc}"))
    return ok_all, results
