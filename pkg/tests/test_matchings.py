import math

import pytest
from hypothesis import given, strategies as st

from springer_tworow import errors
from springer_tworow.matchings import (
    DottedMatching,
    StandardTableau,
    all_dotted_matchings,
    brute_force_matchings,
    complete,
    count_matchings,
    enumerate_matchings,
    format_matching,
    matching_of,
    parse_matching,
    restrict,
    standard_dotted_matchings,
    standard_layout,
    tableau_of,
    validate,
)


def interval_count(n: int, k: int) -> int:
    """Independent counting oracle by first-vertex case analysis.

    Vertex 1 is either a ray (legal only with everything to its right, k
    arcs among n-1 vertices and rays still allowed... rays must be outside
    arcs, so a ray at 1 leaves an arbitrary type (n-1-k, k) matching) or
    opens an arc to vertex 2j for some j, enclosing a ray-free balanced
    region.
    """
    def catalan(j):
        return math.comb(2 * j, j) // (j + 1)

    def count(n, k):
        if k < 0 or 2 * k > n:
            return 0
        if n == 0:
            return 1
        total = count(n - 1, k)  # vertex 1 is a ray
        for inside in range(0, k):
            # arc from vertex 1 encloses `inside` arcs (no rays beneath)
            total += catalan(inside) * count(n - 2 - 2 * inside, k - 1 - inside)
        return total

    return count(n, k)


def test_docstring_examples():
    import doctest

    from springer_tworow import matchings as module

    failures, _ = doctest.testmod(module).failed, None
    assert failures == 0


def test_validate_examples():
    M = validate(4, [(1, 2), (3, 4)])
    assert M.base.k == 2 and not M.base.rays
    with pytest.raises(errors.RayUnderArc):
        validate(4, [(1, 3)], [2, 4])
    with pytest.raises(errors.CrossingArcs):
        validate(4, [(1, 3), (2, 4)])
    with pytest.raises(errors.VertexReuse):
        validate(4, [(1, 2), (2, 3)], [4])
    with pytest.raises(errors.BadCounts):
        validate(4, [(1, 2)], [3])
    with pytest.raises(errors.DotOnNonArc):
        validate(4, [(1, 2), (3, 4)], (), [(1, 3)])


def test_enumerate_b31():
    got = [m.arcs for m in enumerate_matchings(4, 1)]
    assert got == [((1, 2),), ((2, 3),), ((3, 4),)]
    assert [m.rays for m in enumerate_matchings(4, 1)] == [(3, 4), (1, 4), (1, 2)]


def test_enumerate_small_counts():
    assert len(enumerate_matchings(5, 0)) == 1
    assert len(enumerate_matchings(6, 3)) == 5  # Catalan number C_3
    with pytest.raises(errors.DomainError):
        enumerate_matchings(4, 3)


@pytest.mark.parametrize("n", range(0, 11))
def test_enumerate_counts_cross_checked(n):
    for k in range(0, n // 2 + 1):
        ms = enumerate_matchings(n, k)
        assert len(ms) == count_matchings(n, k)
        assert len(ms) == interval_count(n, k)
        if n <= 8:
            assert set(ms) == brute_force_matchings(n, k)


def test_arcs_join_opposite_parities():
    for n in range(1, 11):
        for k in range(0, n // 2 + 1):
            for a in enumerate_matchings(n, k):
                assert all((i + j) % 2 == 1 for i, j in a.arcs)


def test_complete_worked_example():
    a = validate(6, [(1, 2), (4, 5)], [3, 6]).base
    c = complete(a)
    assert c.arcs == ((1, 8), (2, 5), (3, 4), (6, 7))
    assert restrict(c, 2) == a


def test_complete_identity_when_no_rays():
    a = validate(4, [(1, 2), (3, 4)]).base
    assert complete(a) == a


def test_complete_all_rays():
    a = validate(2, [], [1, 2]).base
    assert complete(a).arcs == ((1, 4), (2, 3))


def test_restrict_errors():
    c = validate(4, [(1, 2), (3, 4)]).base
    with pytest.raises(errors.NotInRestrictableSet):
        restrict(c, 2)


def test_completion_bijective_up_to_8():
    for n in range(1, 9):
        for k in range(0, n // 2 + 1):
            pad = n - 2 * k
            images = set()
            for a in enumerate_matchings(n, k):
                c = complete(a)
                assert c not in images
                images.add(c)
                assert restrict(c, pad) == a
            for b in enumerate_matchings(2 * (n - k), n - k):
                if all(arc[1] > pad for arc in b.arcs):
                    assert complete(restrict(b, pad)) == b


TYPE43 = "7: r1 u2-3 d4-7 u5-6"


def test_tableau_of_examples():
    M = parse_matching(TYPE43)
    T = tableau_of(M)
    assert T.top == (1, 2, 4, 5, 7) and T.bottom == (3, 6)
    allen = parse_matching("4: u1-2 u3-4")
    assert tableau_of(allen) == StandardTableau((1, 3), (2, 4))
    alldot = parse_matching("4: r1 r2 d3-4")
    assert tableau_of(alldot).bottom == ()
    with pytest.raises(errors.NotStandard):
        tableau_of(parse_matching("4: u1-4 d2-3"))


def test_matching_of_examples():
    T = StandardTableau((1, 2, 4, 5, 7), (3, 6))
    assert format_matching(matching_of(T, 3)) == TYPE43
    one_row = StandardTableau((1, 2, 3, 4), ())
    assert format_matching(matching_of(one_row, 1)) == "4: r1 r2 d3-4"
    assert format_matching(matching_of(StandardTableau((1, 3), (2, 4)), 2)) == "4: u1-2 u3-4"
    with pytest.raises(errors.ShapeMismatch):
        matching_of(StandardTableau((1, 3), (2, 4)), 1)


def test_bijection_exhaustive():
    for n in range(1, 10):
        for k in range(0, n // 2 + 1):
            for m in range(k + 1):
                standards = standard_dotted_matchings(n, k, m)
                assert len(standards) == count_matchings(n, m)
                for M in standards:
                    assert matching_of(tableau_of(M), k) == M


def test_standard_layout_examples():
    assert format_matching(standard_layout([(2, 3), (5, 6)], 7, 3)) == TYPE43
    assert format_matching(standard_layout([], 4, 1)) == "4: r1 r2 d3-4"
    assert format_matching(standard_layout([(1, 2)], 2, 1)) == "2: u1-2"
    with pytest.raises(errors.NoStandardCompletion):
        standard_layout([(1, 2), (2, 3)], 6, 3)
    with pytest.raises(errors.NoStandardCompletion):
        standard_layout([(2, 3)], 4, 0)


def test_standard_layout_matches_bijection():
    for n in range(1, 9):
        for k in range(0, n // 2 + 1):
            for M in standard_dotted_matchings(n, k):
                built = standard_layout(M.undotted, n, k)
                assert built == M and built.is_standard


def test_codec_examples():
    assert format_matching(parse_matching(TYPE43)) == TYPE43
    assert format_matching(parse_matching("2: u1-2")) == "2: u1-2"
    with pytest.raises(errors.RayUnderArc):
        parse_matching("4: u1-3 r2 r4")
    with pytest.raises(errors.CodecSyntaxError):
        parse_matching("4: x1-2")
    with pytest.raises(errors.CodecSyntaxError):
        parse_matching("u1-2")
    with pytest.raises(errors.CodecSyntaxError):
        parse_matching("4: r1-2 r3 r4")


def test_codec_roundtrip_exhaustive():
    for n in range(0, 8):
        for k in range(0, n // 2 + 1):
            for M in all_dotted_matchings(n, k):
                assert parse_matching(format_matching(M)) == M


@given(st.integers(min_value=1, max_value=8), st.data())
def test_codec_roundtrip_random(n, data):
    k = data.draw(st.integers(min_value=0, max_value=n // 2))
    ms = enumerate_matchings(n, k)
    base = ms[data.draw(st.integers(min_value=0, max_value=len(ms) - 1))]
    dotted = tuple(
        arc for arc in base.arcs if data.draw(st.booleans())
    )
    M = DottedMatching(base, dotted)
    assert parse_matching(format_matching(M)) == M


def test_grading_and_standardness():
    M = parse_matching(TYPE43)
    assert M.m == 2 and M.k == 3 and M.is_standard
    assert not parse_matching("4: d1-2 r3 r4").is_standard  # rays right of a dot
    assert not parse_matching("4: u1-4 d2-3").is_standard   # nested dot
    assert parse_matching("4: d1-4 u2-3").is_standard       # dot over undotted is fine
