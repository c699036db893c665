"""Exact tabloid arithmetic: polytabloids, matching vectors, characters.

Tabloids of two-row shape (n-m, m) are keyed by their bottom-row set.
The polytabloid of a standard tableau alternates over the column
stabilizer.  The matching vector of a dotted matching expands every
undotted arc into a difference of its two endpoint tabloids, oriented
toward the endpoint with the parity of n (an even count of vertices to
its right): each arc joins one even and one odd vertex, and this
orientation of the two-sphere factors is the one under which the class
map kills all three relation families, intertwines the
coordinate-permutation action, and commutes with completion.  For even n
and undotted arcs (1,2), (3,4), ... it reduces to right minus left and
the matching vector coincides with the polytabloid of the associated
tableau.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, SizeMismatch
from .homology import HomClass
from .matchings import DottedMatching, StandardTableau, complete_dotted
from .permutations import Permutation

TabloidKey = frozenset


@dataclass(frozen=True)
class TabloidVector:
    """Exact-rational vector over m-subset tabloids (bottom-row sets)."""

    n: int
    m: int
    coords: tuple[tuple[TabloidKey, Fraction], ...]

    @property
    def as_dict(self) -> dict[TabloidKey, Fraction]:
        return dict(self.coords)

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "TabloidVector") -> "TabloidVector":
        if (self.n, self.m) != (other.n, other.m):
            raise SizeMismatch("tabloid shapes differ")
        out = self.as_dict
        for key, c in other.coords:
            out[key] = out.get(key, Fraction(0)) + c
        return tabloid_vector(self.n, self.m, out)

    def __sub__(self, other: "TabloidVector") -> "TabloidVector":
        return self + other.scale(-1)

    def scale(self, c) -> "TabloidVector":
        return tabloid_vector(self.n, self.m, {k: Fraction(c) * v for k, v in self.coords})

    def to_row(self) -> list[Fraction]:
        """Dense coordinates over all m-subsets of 1..n, sorted."""
        lookup = self.as_dict
        return [lookup.get(key, Fraction(0)) for key in tabloid_keys(self.n, self.m)]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, c in self.coords:
            name = "{" + ",".join(map(str, sorted(key))) + "}"
            parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def tabloid_vector(n: int, m: int, coords: dict) -> TabloidVector:
    clean = {}
    for key, c in coords.items():
        key = frozenset(key)
        if len(key) != m:
            raise SizeMismatch(f"key {sorted(key)} is not an {m}-subset")
        c = Fraction(c)
        if c != 0:
            clean[key] = c
    ordered = tuple(sorted(clean.items(), key=lambda t: sorted(t[0])))
    return TabloidVector(n, m, ordered)


@lru_cache(maxsize=None)
def tabloid_keys(n: int, m: int) -> tuple[TabloidKey, ...]:
    return tuple(frozenset(c) for c in itertools.combinations(range(1, n + 1), m))


def permute(sigma: Permutation, v: TabloidVector) -> TabloidVector:
    if sigma.n != v.n:
        raise SizeMismatch(f"permutation on {sigma.n} letters, vector on {v.n}")
    return tabloid_vector(v.n, v.m, {sigma.apply_to_set(k): c for k, c in v.coords})


def polytabloid(T: StandardTableau) -> TabloidVector:
    """Alternating sum over the column stabilizer (order 2^m)."""
    T.check()
    n, m = T.n, len(T.bottom)
    columns = list(zip(T.top, T.bottom))
    out: dict[TabloidKey, Fraction] = {}
    for swaps in itertools.product((False, True), repeat=m):
        key = frozenset(t if s else b for s, (t, b) in zip(swaps, columns))
        sign = (-1) ** sum(swaps)
        out[key] = out.get(key, Fraction(0)) + sign
    return tabloid_vector(n, m, out)


def matching_vector(M: DottedMatching) -> TabloidVector:
    """Signed tabloid expansion of the undotted arcs.

    Each undotted arc contributes (v at one endpoint) - (v at the other),
    positively oriented toward the endpoint lying an even number of
    vertices from the right edge of the diagram (the endpoint with the
    parity of n).  That orientation is invariant under completion and is
    the one under which all three relation families cancel.  Dots and
    rays contribute nothing; M need not be standard.
    """
    n = M.n
    arcs = M.undotted
    m = len(arcs)
    oriented = []
    for i, j in arcs:
        if (i + j) % 2 == 0:
            raise DomainError(f"arc ({i},{j}) joins two vertices of equal parity")
        plus, minus = (i, j) if i % 2 == n % 2 else (j, i)
        oriented.append((plus, minus))
    out: dict[TabloidKey, Fraction] = {}
    for picks in itertools.product((0, 1), repeat=m):
        key = frozenset(mi if p else pl for p, (pl, mi) in zip(picks, oriented))
        sign = (-1) ** sum(picks)
        out[key] = out.get(key, Fraction(0)) + sign
    return tabloid_vector(n, m, out)


def zeta(x: HomClass) -> TabloidVector:
    """Linear extension of the matching-vector map to formal sums."""
    m = x.grading
    out = tabloid_vector(x.n, m, {})
    for M, c in x.terms:
        out = out + matching_vector(M).scale(c)
    return out


def f_embed(v: TabloidVector, pad: int) -> TabloidVector:
    """Shift every bottom-row set by ``pad`` into shape (n + pad - m, m)."""
    if pad < 0:
        raise DomainError(f"pad {pad} is negative")
    return tabloid_vector(
        v.n + pad, v.m, {frozenset(x + pad for x in k): c for k, c in v.coords}
    )


def shifted_permutation(sigma: Permutation, pad: int) -> Permutation:
    """The permutation fixing 1..pad and acting as sigma beyond it."""
    images = list(range(1, pad + 1)) + [sigma(i) + pad for i in range(1, sigma.n + 1)]
    return Permutation(tuple(images))


def completion_vector(M: DottedMatching) -> TabloidVector:
    """Matching vector of the completion, dots carried along."""
    return matching_vector(complete_dotted(M))


@dataclass
class ModuleComparison:
    equal: bool
    tableau_rows: list
    matching_rows: list
    tableau_in_matching: list | None  # row i: e_T(i) over the e_M basis
    matching_in_tableau: list | None  # row i: e_M(i) over the e_T basis


def modules_equal(n: int, m: int, k: int) -> ModuleComparison:
    """Row-space comparison of the tableau and matching spanning sets.

    The rows are dense tabloid coordinates of the polytabloids of
    standard (n-m, m) tableaux and of the matching vectors of standard
    dotted matchings of type (n-k, k) with grading m; when the spans
    coincide both exact change-of-basis matrices come along.
    """
    from . import linalg
    from .matchings import standard_dotted_matchings, tableau_of

    if m > k:
        raise DomainError(f"m={m} exceeds k={k}")
    ms = standard_dotted_matchings(n, k, m)
    t_rows = [polytabloid(tableau_of(M)).to_row() for M in ms]
    m_rows = [matching_vector(M).to_row() for M in ms]
    equal = linalg.row_space_equal(t_rows, m_rows)
    t_in_m = m_in_t = None
    if equal and ms:
        m_solver = linalg.ColumnSolver(m_rows)
        t_solver = linalg.ColumnSolver(t_rows)
        t_in_m = [m_solver.solve(row) for row in t_rows]
        m_in_t = [t_solver.solve(row) for row in m_rows]
    return ModuleComparison(equal, t_rows, m_rows, t_in_m, m_in_t)


# --- characters ----------------------------------------------------------------

@lru_cache(maxsize=None)
def irr_character(shape: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Character of the irreducible labelled by ``shape`` at cycle type ``mu``.

    Border-strip (Murnaghan-Nakayama) recursion over partitions; exact.
    """
    shape = tuple(x for x in shape if x > 0)
    mu = tuple(x for x in mu if x > 0)
    if sum(shape) != sum(mu):
        raise DomainError(f"{shape} and {mu} partition different numbers")
    if not shape:
        return 1
    t = mu[0]
    rest = mu[1:]
    total = 0
    for strip, height in _border_strips(shape, t):
        total += (-1) ** height * irr_character(strip, rest)
    return total


def _border_strips(shape: tuple[int, ...], t: int):
    """Shapes obtained by removing a size-t border strip, with leg lengths.

    Beta-number formulation: with beta_i = shape_i + (rows - 1 - i), a
    strip removal subtracts t from one beta number without colliding with
    another; the leg length is the number of beta numbers jumped over.
    """
    rows = len(shape)
    beta = [shape[i] + (rows - 1 - i) for i in range(rows)]
    bset = set(beta)
    for b in beta:
        nb = b - t
        if nb < 0 or nb in bset:
            continue
        newbeta = sorted((bset - {b}) | {nb}, reverse=True)
        height = sum(1 for x in beta if nb < x < b)
        newshape = tuple(
            x - (rows - 1 - idx) for idx, x in enumerate(newbeta)
        )
        yield tuple(x for x in newshape if x > 0), height
