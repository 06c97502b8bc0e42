"""Exact linear algebra over Q (via FLINT) with a small pure-Python reference path.

Matrices are lists of rows of integers or :class:`Fraction`.  Rows with
rational entries are cleared of denominators row by row, which does not
change the row space, the rank or the kernel of the matrix acting on
column vectors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import List, Sequence

import flint

# a 31-bit prime used only as a pre-filter; every verdict is recomputed over Q
FILTER_PRIME = 2147483629


def _integer_row(row: Sequence) -> List[int]:
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(c).denominator for c in row), 1)
    return [int(Fraction(c) * den) for c in row]


def _fmpz(rows: Sequence[Sequence], ncols: int) -> flint.fmpz_mat:
    if not rows:
        return flint.fmpz_mat(0, ncols)
    return flint.fmpz_mat([_integer_row(r) for r in rows])


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    return _fmpz(rows, ncols).rank()


def kernel(rows: Sequence[Sequence], ncols: int) -> List[List[int]]:
    """Basis of {v : A v = 0} as primitive integer vectors."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    X, nullity = _fmpz(rows, ncols).nullspace()
    out = []
    for j in range(nullity):
        v = [int(X[i, j]) for i in range(ncols)]
        g = reduce(math.gcd, v, 0)
        out.append([c // g for c in v])
    return out


def rank_mod_p(rows: Sequence[Sequence], ncols: int, p: int = FILTER_PRIME) -> int:
    if not rows:
        return 0
    ints = [[c % p for c in _integer_row(r)] for r in rows]
    return flint.nmod_mat(ints, p).rank()


def nullity_mod_p(rows: Sequence[Sequence], ncols: int, p: int = FILTER_PRIME) -> int:
    return ncols - rank_mod_p(rows, ncols, p)


# ---------------------------------------------------------------------------
# reference implementation (used by tests as an independent oracle)


def rref_fraction(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    A = [[Fraction(c) for c in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def kernel_fraction(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    R, pivots = rref_fraction(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        out.append(v)
    return out


def det(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    entries = [flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for r in rows for c in r]
    d = flint.fmpq_mat(n, n, entries).det()
    return Fraction(int(d.p), int(d.q))


def det_fraction(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free elimination (Bareiss), without FLINT."""
    M = [[Fraction(c) for c in r] for r in rows]
    n = len(M)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return Fraction(0)
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
