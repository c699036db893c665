import pytest

from springer_tworow import errors
from springer_tworow.diagrams import compatible, distance, glue
from springer_tworow.matchings import enumerate_matchings, parse_matching
from springer_tworow.subspaces import from_constraints, full_space, subspace_of


def m(text):
    return parse_matching(text).base


def test_x31_components_and_points():
    a, b, c = (m("4: u1-2 r3 r4"), m("4: r1 u2-3 r4"), m("4: r1 r2 u3-4"))
    Sa, Sb, Sc = subspace_of(a), subspace_of(b), subspace_of(c)
    assert Sa.pin_vector() == (None, None, -1, 1)
    assert Sb.pin_vector() == (-1, None, None, 1)
    assert Sc.pin_vector() == (-1, 1, None, None)
    assert Sa.dimension == Sb.dimension == Sc.dimension == 2
    assert Sa.intersect(Sb).pin_vector() == (-1, -1, -1, 1)
    assert Sb.intersect(Sc).pin_vector() == (-1, 1, 1, 1)
    assert Sa.intersect(Sc).empty


def test_primed_variant():
    a = m("4: u1-2 r3 r4")
    Sp = subspace_of(a, "primed")
    assert Sp.pin_vector() == (None, None, 1, 1)
    rels, _ = Sp.constraints()
    assert rels == [(2, 1, -1)]


def test_no_rays_no_pins():
    a = m("4: u1-2 u3-4")
    S = subspace_of(a)
    assert not S.pins and S.free_class_count == 2 and S.dimension == 4


def test_intersection_idempotent_and_dimension():
    for n in range(1, 8):
        for k in range(0, n // 2 + 1):
            for a in enumerate_matchings(n, k):
                S = subspace_of(a)
                assert S.intersect(S) == S
                assert S.dimension == 2 * k


def test_fung_criterion_and_circle_count():
    for n in range(1, 9):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            spaces = {a: subspace_of(a) for a in ms}
            for a in ms:
                for b in ms:
                    inter = spaces[a].intersect(spaces[b])
                    if compatible(a, b):
                        assert inter.free_class_count == len(glue(a, b).circles)
                    else:
                        assert inter.empty


def test_contains():
    a, b, c = (m("4: u1-2 r3 r4"), m("4: r1 u2-3 r4"), m("4: r1 r2 u3-4"))
    Sa, Sb, Sc = subspace_of(a), subspace_of(b), subspace_of(c)
    assert Sa.contains(Sa.intersect(Sb))
    assert full_space(4).contains(Sa)
    assert Sb.contains(Sa.intersect(Sc))      # empty set in anything
    assert not Sa.contains(Sb)


def test_sign_conflict_collapses():
    S = from_constraints(2, [(1, 2, 1), (1, 2, -1)], [])
    assert S.empty
    S2 = from_constraints(2, [(1, 2, 1)], [(1, 1), (2, -1)])
    assert S2.empty
    S3 = from_constraints(2, [(1, 2, 1)], [(1, 1), (2, 1)])
    assert not S3.empty and S3.dimension == 0


def test_gamma_is_primed_involution():
    for n in range(1, 7):
        for k in range(0, n // 2 + 1):
            for a in enumerate_matchings(n, k):
                S = subspace_of(a)
                assert S.apply_gamma() == subspace_of(a, "primed")
                assert S.apply_gamma().apply_gamma() == S


def test_commuting_square():
    for n in range(1, 7):
        for k in range(0, n // 2 + 1):
            target = 2 * (n - k)
            for a in enumerate_matchings(n, k):
                S = subspace_of(a)
                assert S.apply_eta(target).apply_gamma() == S.apply_gamma().apply_iota(target)


def test_eta_lands_in_completion_component():
    from springer_tworow.matchings import complete

    for n in range(1, 7):
        for k in range(0, n // 2 + 1):
            target = 2 * (n - k)
            for a in enumerate_matchings(n, k):
                image = subspace_of(a).apply_eta(target)
                assert subspace_of(complete(a)).contains(image)


def test_pad_size_mismatch():
    S = subspace_of(m("4: u1-2 r3 r4"))
    with pytest.raises(errors.PadSizeMismatch):
        S.apply_eta(3)
    with pytest.raises(errors.PadSizeMismatch):
        S.apply_iota(7)


def test_intersection_algebra_random():
    from hypothesis import given, settings, strategies as st

    @settings(max_examples=60)
    @given(st.data())
    def run(data):
        n = data.draw(st.integers(min_value=1, max_value=6))
        picks = []
        for _ in range(3):
            k = data.draw(st.integers(min_value=0, max_value=n // 2))
            ms = enumerate_matchings(n, k)
            picks.append(subspace_of(ms[data.draw(st.integers(0, len(ms) - 1))]))
        A, B, C = picks
        assert A.intersect(B) == B.intersect(A)
        assert A.intersect(B).intersect(C) == A.intersect(B.intersect(C))
        assert A.contains(A.intersect(B))

    run()


def test_triple_intersection_lemma():
    for n in range(2, 8):
        for k in range(0, n // 2 + 1):
            ms = enumerate_matchings(n, k)
            spaces = {a: subspace_of(a) for a in ms}
            for a in ms:
                for b in ms:
                    if not compatible(a, b):
                        continue
                    dab = distance(a, b)
                    for c in ms:
                        if distance(a, c) == dab + distance(b, c):
                            lhs = spaces[a].intersect(spaces[c])
                            assert lhs == lhs.intersect(spaces[b])
