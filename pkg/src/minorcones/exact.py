"""Exact rational linear algebra on plain Python lists of Fractions/ints.

Everything here is deliberately dependency-free: cone certificates must be
exact, so no floating point enters any function in this module.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import List, Sequence, Tuple

Vector = Tuple
Matrix = Sequence[Sequence]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(vec: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same ray)."""
    denoms = [Fraction(x).denominator for x in vec]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(Fraction(x) * lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rref(rows: Matrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    return len(rref(rows)[0])


def bareiss_rank(rows: Matrix) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    mat = [list(map(int, row)) for row in rows]
    if not mat:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, nrows):
            fi = mat[i][c]
            row_i = mat[i]
            row_r = mat[r]
            for j in range(ncols):
                row_i[j] = (row_i[j] * p - fi * row_r[j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rank_by_minors(rows: Matrix) -> int:
    """Rank via brute-force minor expansion; an independent test oracle."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    for k in range(min(nrows, ncols), 0, -1):
        for rs in combinations(range(nrows), k):
            for cs in combinations(range(ncols), k):
                sub = [[mat[i][j] for j in cs] for i in rs]
                if det(sub) != 0:
                    return k
    return 0


def det(mat: Matrix) -> Fraction:
    """Determinant by cofactor expansion (small matrices only)."""
    k = len(mat)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(mat[0][0])
    total = Fraction(0)
    sign = 1
    for j in range(k):
        if mat[0][j] != 0:
            minor = [[row[c] for c in range(k) if c != j] for row in mat[1:]]
            total += sign * Fraction(mat[0][j]) * det(minor)
        sign = -sign
    return total


def kernel_basis(rows: Matrix, ncols: int) -> List[Tuple[int, ...]]:
    """Primitive integer basis of the right kernel of `rows`."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(primitive(vec))
    return basis


def in_row_span(rows: Matrix, v: Sequence) -> bool:
    red, pivots = rref(rows)
    vec = [Fraction(x) for x in v]
    for r, p in enumerate(pivots):
        if vec[p] != 0:
            f = vec[p]
            vec = [x - f * y for x, y in zip(vec, red[r])]
    return all(x == 0 for x in vec)


def reduce_against(red: List[List[Fraction]], pivots: List[int],
                   v: Sequence) -> Tuple[Fraction, ...]:
    """Normal form of v modulo the row space given by an rref basis."""
    vec = [Fraction(x) for x in v]
    for r, p in enumerate(pivots):
        if vec[p] != 0:
            f = vec[p]
            vec = [x - f * y for x, y in zip(vec, red[r])]
    return tuple(vec)
