"""Exact determinants, ranks, solves, bases of the real block and its circuits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import IntVec, RatVec, normalize_primitive, primitive

Matrix = Sequence[Sequence[int]]


def det(M: Matrix) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(M: Matrix) -> int:
    """Rank by fraction-free row elimination (integer entries stay integers)."""
    a = [list(row) for row in M]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f, p = a[i][c], a[r][c]
                a[i] = [p * x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def columns(M: Matrix, cols: Sequence[int]) -> list[list[int]]:
    return [[row[j] for j in cols] for row in M]


def solve(M: Matrix, v: Sequence) -> RatVec:
    """Exact solution of the square nonsingular system ``M y = v``."""
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(v[i])] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


def nullspace(M: Matrix, ncols: int) -> list[IntVec]:
    """Basis of the rational kernel of ``M`` as primitive integer vectors."""
    a = [[Fraction(x) for x in row] for row in M]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][free]
        basis.append(primitive(v))
    return basis


@dataclass(frozen=True, order=True)
class Basis:
    cols: tuple[int, ...]
    det: int


def enumerate_bases(inst) -> list[Basis]:
    """All nonsingular m-column subsets of the real block, lexicographic."""
    out = []
    for cols in combinations(range(inst.nR), inst.m):
        d = det(columns(inst.AR, cols))
        if d:
            out.append(Basis(cols, d))
    return out


def solve_basis(B: Basis, inst, v: Sequence) -> RatVec:
    return solve(columns(inst.AR, B.cols), v)


def basis_inverse_times(B: Basis, inst, M: Matrix) -> list[RatVec]:
    """Rows of ``B^-1 M`` for an m-row matrix ``M``."""
    ncols = len(M[0]) if M else 0
    cols = [solve_basis(B, inst, [row[j] for row in M]) for j in range(ncols)]
    return [tuple(col[p] for col in cols) for p in range(inst.m)]


def max_subdeterminant(inst) -> int:
    """Largest |det| over all square submatrices of A (exhaustive)."""
    A = inst.A
    m, n = len(A), len(A[0])
    best = 0
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            sub = [A[i] for i in rows]
            for cols in combinations(range(n), k):
                best = max(best, abs(det(columns(sub, cols))))
    return best


@dataclass(frozen=True, order=True)
class Circuit:
    vec: IntVec

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.vec) if x)

    def padded(self, nI: int) -> IntVec:
        return self.vec + (0,) * nI


def matrix_circuits(M: Matrix, ncols: int) -> list[Circuit]:
    """Circuits of ``M`` (one representative per +/- pair) via signed maximal minors."""
    found: set[IntVec] = set()
    for size in range(1, ncols + 1):
        for J in combinations(range(ncols), size):
            sub = columns(M, J)
            r = rank(sub)
            if r != size - 1:
                continue
            # rows of sub spanning its row space
            rows: list[list[int]] = []
            for row in sub:
                if rank(rows + [row]) > len(rows):
                    rows.append(row)
            full = [0] * ncols
            for k, j in enumerate(J):
                minor = [row[:k] + row[k + 1:] for row in rows]
                full[j] = (-1) ** k * det(minor)
            if any(full):
                found.add(normalize_primitive(full))
    supports = {v: frozenset(i for i, x in enumerate(v) if x) for v in found}
    minimal = [v for v in found if not any(supports[w] < supports[v] for w in found)]
    return [Circuit(v) for v in sorted(minimal)]


def circuits(inst) -> list[Circuit]:
    """Circuits of the real block A^R."""
    return matrix_circuits(inst.AR, inst.nR)
