"""Exact integer/rational linear algebra on small dense matrices.

Matrices are lists of rows. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q using fraction-free (Bareiss) elimination on integers."""
    a = [[int(v) for v in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # Exact: every entry after step r is an (r+1)-minor of the input.
                a[i][j] = (a[i][j] * p - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = p
        r += 1
    return r


def rref(rows: Sequence[Sequence[int | Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    a = [[Fraction(v) for v in row] for row in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : A v = 0}`` as rational vectors, one per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of ``{w : w^T A = 0}``."""
    if not rows:
        return []
    return nullspace(transpose(rows), ncols=len(rows))


def row_space(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of the row space (nonzero rows of the RREF)."""
    red, _ = rref(rows)
    return red


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def integer_row(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints
