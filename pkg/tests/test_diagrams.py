import math

import pytest

from springer_tworow import errors
from springer_tworow.diagrams import (
    arrow_graph,
    arrow_successors,
    compatible,
    distance,
    glue,
    is_arrow,
    linear_order,
    meet,
    minimal_sequence,
    reachable,
)
from springer_tworow.matchings import enumerate_matchings, parse_matching


def m(text):
    return parse_matching(text).base


def test_glue_single_line_pair():
    a = m("5: r1 u2-3 u4-5")
    b = m("5: u1-2 u3-4 r5")
    g = glue(a, b)
    assert len(g) == 1
    (comp,) = g.components
    assert comp.kind == "line" and comp.vertices == frozenset(range(1, 6))
    assert comp.ends == ((1, "up"), (5, "down"))
    assert compatible(a, b)


def test_glue_self():
    a = m("5: r1 u2-3 u4-5")
    g = glue(a, a)
    assert len(g.circles) == 2 and len(g.lines) == 1
    for line in g.lines:
        assert sorted(d for _, d in line.ends) == ["down", "up"]
    assert compatible(a, a)


def test_glue_b22_circle():
    g = glue(m("4: u1-2 u3-4"), m("4: u1-4 u2-3"))
    assert len(g) == 1 and g.components[0].kind == "circle"
    assert g.components[0].vertices == frozenset({1, 2, 3, 4})


def test_glue_type_mismatch():
    with pytest.raises(errors.TypeMismatch):
        glue(m("4: u1-2 r3 r4"), m("4: u1-2 u3-4"))


def test_vertex_sets_partition():
    for n in range(1, 8):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms[:5]:
                for b in ms[:5]:
                    g = glue(a, b)
                    union = set()
                    for vs in g.vertex_sets:
                        assert not (union & vs)
                        union |= vs
                    assert union == set(range(1, n + 1))
                    assert len(g.lines) == n - 2 * k
                    for c in g.circles:
                        assert len(c.vertices) % 2 == 0


def test_incompatible_example():
    a = m("4: u1-2 r3 r4")
    c = m("4: r1 r2 u3-4")
    assert not compatible(a, c)


def test_arrow_successors_examples():
    c = m("4: r1 r2 u3-4")
    assert arrow_successors(c) == (m("4: r1 u2-3 r4"),)
    assert arrow_successors(m("4: u1-2 u3-4")) == (m("4: u1-4 u2-3"),)
    assert arrow_successors(m("4: u1-2 r3 r4")) == ()


def test_arrow_move_blocked_by_container():
    # nesting (2,3) with (5,6) would produce (2,6), crossing (1,4); the only
    # legal move nests (1,4)'s pair... i.e. rearranges (1,4) and (5,6)
    a = m("6: u1-4 u2-3 u5-6")
    succs = arrow_successors(a)
    assert succs == (m("6: u1-6 u2-3 u4-5"),)
    for b in succs:
        assert is_arrow(a, b)


def test_linear_order_b31():
    order = [x.arcs for x in linear_order(4, 1)]
    assert order == [((3, 4),), ((2, 3),), ((1, 2),)]
    assert [x.arcs for x in linear_order(4, 2)] == [((1, 2), (3, 4)), ((1, 4), (2, 3))]
    assert len(linear_order(5, 0)) == 1


def test_linear_order_extends_arrows():
    for n in range(2, 9):
        for k in range(0, n // 2 + 1):
            for variant in (0, 1, 2, 3):
                order = linear_order(n, k, variant)
                pos = {a: i for i, a in enumerate(order)}
                for a in order:
                    for b in arrow_successors(a):
                        assert pos[a] < pos[b]


def test_distance_examples():
    assert distance(m("4: u1-2 u3-4"), m("4: u1-4 u2-3")) == 1
    a = m("4: u1-2 r3 r4")
    assert distance(a, a) == 0
    assert distance(a, m("4: r1 r2 u3-4")) == 2


def test_distance_formula_exhaustive():
    for n in range(1, 9):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms:
                for b in ms:
                    if compatible(a, b):
                        assert distance(a, b) == n - k - len(glue(a, b))


def test_minimal_sequence_examples():
    seq = minimal_sequence(m("4: u1-2 u3-4"), m("4: u1-4 u2-3"))
    assert len(seq) == 1 and seq.certified and seq.tags == ("->",)
    a = m("5: r1 u2-3 u4-5")
    same = minimal_sequence(a, a)
    assert len(same) == 0 and same.certified
    b = m("5: u1-2 u3-4 r5")
    seq2 = minimal_sequence(a, b)
    assert len(seq2) == 2 and seq2.certified


def test_minimal_sequence_incompatible_falls_back():
    a = m("4: u1-2 r3 r4")
    c = m("4: r1 r2 u3-4")
    seq = minimal_sequence(a, c)
    assert not seq.certified
    assert len(seq) == distance(a, c)
    for x, y in zip(seq.steps, seq.steps[1:]):
        assert is_arrow(x, y) or is_arrow(y, x)


def test_minimal_sequences_split_components():
    for n in range(2, 9):
        for k in range(1, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms:
                for b in ms:
                    if a == b or not compatible(a, b):
                        continue
                    seq = minimal_sequence(a, b)
                    assert seq.certified and len(seq) == distance(a, b)
                    assert seq.steps[0] == a and seq.steps[-1] == b
                    for x, y in zip(seq.steps, seq.steps[1:]):
                        assert len(glue(x, b)) == len(glue(y, b)) - 1


def test_component_count_bound():
    for n in range(2, 8):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms:
                for b in ms:
                    assert len(glue(a, b)) <= n - k
                assert len(glue(a, a)) == n - k


def test_ray_pairing():
    for n in range(2, 9):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms:
                for b in ms:
                    if not compatible(a, b):
                        continue
                    g = glue(a, b)
                    for ra, rb in zip(a.rays, b.rays):
                        comp = next(c for c in g.lines if ra in c.vertices)
                        assert rb in comp.vertices


def test_meet_examples():
    a, b, c = (m("4: u1-2 r3 r4"), m("4: r1 u2-3 r4"), m("4: r1 r2 u3-4"))
    assert meet(a, b) == b        # comparable pair: lower element
    assert meet(a, c) == c        # chain a > b > c
    assert meet(m("4: u1-2 u3-4"), m("4: u1-4 u2-3")) == m("4: u1-2 u3-4")


def test_meet_properties():
    for n in range(2, 8):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms:
                for b in ms:
                    if not compatible(a, b):
                        continue
                    c = meet(a, b)
                    assert reachable(c, a) and reachable(c, b)
                    assert distance(a, c) + distance(c, b) == distance(a, b)


def test_winding_parity():
    for n in range(2, 9):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            for a in ms:
                for b in ms:
                    for comp in glue(a, b).circles:
                        arcs = comp.arcs_above
                        for (i, l) in arcs:
                            for (j, kk) in arcs:
                                if not (i < j and kk < l):
                                    continue
                                if any(
                                    i < x < j and kk < y < l
                                    for x, y in arcs
                                    if (x, y) not in ((i, l), (j, kk))
                                ):
                                    continue
                                between = sum(
                                    1 for x, y in a.arcs if i < x < j and kk < y < l
                                )
                                assert between % 2 == 0


def test_arrow_graph_cached_and_acyclic():
    g1 = arrow_graph(6, 2)
    g2 = arrow_graph(6, 2)
    assert g1 is g2
    assert len(g1.nodes) == math.comb(6, 2) - math.comb(6, 1)
    linear_order(6, 2)  # raises CycleDetected on a cycle
