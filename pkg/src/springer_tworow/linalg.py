"""Exact linear algebra over the rationals (fractions.Fraction).

Matrices are lists of lists; everything is desk scale (dimensions in the
low hundreds), so plain Gaussian elimination is both simple and fast
enough.  No floats anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SolveFailed

Row = list[Fraction]


def _to_fraction_rows(rows: Sequence[Sequence]) -> list[Row]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = _to_fraction_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def row_space_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """True iff the two row spans coincide (same ambient width)."""
    ra, _ = rref(a)
    rb, _ = rref(b)
    return ra == rb


def reduce_against(vector: Sequence, echelon: list[Row], pivots: list[int]) -> Row:
    """Subtract multiples of echelon rows to clear the pivot coordinates."""
    v = [Fraction(x) for x in vector]
    for row, c in zip(echelon, pivots):
        if v[c] != 0:
            f = v[c]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def in_row_space(vector: Sequence, rows: Sequence[Sequence]) -> bool:
    ech, piv = rref(rows)
    return all(x == 0 for x in reduce_against(vector, ech, piv))


class ColumnSolver:
    """Solve A x = b exactly for a fixed full-column-rank matrix A.

    Columns are given as vectors; the solver factors once and answers
    many right-hand sides.
    """

    def __init__(self, columns: Sequence[Sequence]):
        self.ncols = len(columns)
        self.nrows = len(columns[0]) if columns else 0
        aug = [[Fraction(columns[j][i]) for j in range(self.ncols)]
               for i in range(self.nrows)]
        # Row-reduce A while recording the transform T with T A = E.
        transform = [[Fraction(1 if i == j else 0) for j in range(self.nrows)]
                     for i in range(self.nrows)]
        r = 0
        self.pivot_cols: list[int] = []
        for c in range(self.ncols):
            pivot_row = next((i for i in range(r, self.nrows) if aug[i][c] != 0), None)
            if pivot_row is None:
                raise SolveFailed("columns are linearly dependent")
            aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
            transform[r], transform[pivot_row] = transform[pivot_row], transform[r]
            inv = Fraction(1) / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            transform[r] = [x * inv for x in transform[r]]
            for i in range(self.nrows):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
                    transform[i] = [a - f * b for a, b in zip(transform[i], transform[r])]
            self.pivot_cols.append(c)
            r += 1
        self._echelon = aug
        self._transform = transform
        self._rank = r

    def solve(self, b: Sequence) -> list[Fraction]:
        """Return x with A x = b, or raise SolveFailed if inconsistent."""
        bf = [Fraction(x) for x in b]
        tb = [sum(t * x for t, x in zip(row, bf)) for row in self._transform]
        x = [Fraction(0)] * self.ncols
        for r in range(self._rank):
            x[r] = tb[r]
        # consistency: rows of E beyond the rank must match zero
        for r in range(self._rank, self.nrows):
            if tb[r] != 0:
                raise SolveFailed("right-hand side outside the column span")
        return x

    def solve_int(self, b: Sequence) -> list[int]:
        x = self.solve(b)
        if any(f.denominator != 1 for f in x):
            raise SolveFailed(f"expected integer solution, got {x}")
        return [int(f) for f in x]
