"""Exact nullspace extraction by fraction-free (Bareiss) elimination.

Rows are cleared to integers, eliminated with the two-step determinant
division (every division is exact), and the kernel is recovered by back
substitution over rationals.  Row and column orders are fixed by the
caller, so results are reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    out = []
    for row in rows:
        if all(x == 0 for x in row):
            continue
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Tuple[Fraction, ...]]:
    """Basis of the right kernel of the stacked row matrix.

    Returns one vector per free column, each normalized to have 1 in its
    free coordinate; the list is ordered by free column index.
    """
    mat = _integer_rows(rows)
    nrows = len(mat)
    pivot_cols: List[int] = []
    pivot_rows: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        piv = mat[r][c]
        # Bareiss step: also rescales rows with a zero in the pivot column,
        # keeping every division exact
        for i in range(r + 1, nrows):
            row_i = mat[i]
            row_r = mat[r]
            f = row_i[c]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
        pivot_cols.append(c)
        pivot_rows.append(r)
        prev = piv
        r += 1
        if r == nrows:
            break
    free_cols = [c for c in range(ncols) if c not in set(pivot_cols)]
    basis: List[Tuple[Fraction, ...]] = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        # back substitution over the echelon rows
        for k in range(len(pivot_cols) - 1, -1, -1):
            row = mat[pivot_rows[k]]
            c = pivot_cols[k]
            if c > f:
                continue
            s = Fraction(0)
            for j in range(c + 1, ncols):
                if vec[j]:
                    s += row[j] * vec[j]
            vec[c] = -s / row[c]
        basis.append(tuple(vec))
    return basis


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return ncols - len(nullspace(rows, ncols))
