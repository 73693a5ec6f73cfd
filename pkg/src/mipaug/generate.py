"""Random desk-scale instances whose feasible region is bounded and fits the box."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .exact import dot
from .instance import MIPInstance, validate_instance
from .linalg import columns, det, matrix_circuits, solve


def vertices(inst: MIPInstance) -> list[tuple[Fraction, ...]]:
    """Vertices of the LP relaxation {x >= 0 : Ax = b}."""
    out = set()
    for cols in combinations(range(inst.n), inst.m):
        M = columns(inst.A, cols)
        if det(M) == 0:
            continue
        xB = solve(M, inst.b)
        if all(v >= 0 for v in xB):
            x = [Fraction(0)] * inst.n
            for j, v in zip(cols, xB):
                x[j] = v
            out.add(tuple(x))
    return sorted(out)


def relaxation_bounded(inst: MIPInstance) -> bool:
    for c in matrix_circuits(inst.A, inst.n):
        if all(v >= 0 for v in c.vec) or all(v <= 0 for v in c.vec):
            return False
    return True


def box_is_exhaustive(inst: MIPInstance) -> bool:
    """True when every feasible integer part of the relaxation lies in the box."""
    if inst.box is None or not relaxation_bounded(inst):
        return False
    lo, hi = inst.box
    for v in vertices(inst):
        for j in range(inst.nI):
            if v[inst.nR + j] > hi[j] or (lo[j] > 0):
                return False
    return True


def random_instance(
    rng: random.Random,
    max_m: int = 2,
    max_nR: int = 4,
    max_nI: int = 2,
    max_entry: int = 3,
    max_side: int = 4,
    tries: int = 10_000,
) -> Optional[MIPInstance]:
    """Draw until the instance is valid, bounded, feasible and its box is exhaustive."""
    for _ in range(tries):
        m = rng.randint(1, max_m)
        nR = rng.randint(m, max_nR)
        nI = rng.randint(1, max_nI)
        n = nR + nI
        A = [[rng.randint(-max_entry, max_entry) for _ in range(n)] for _ in range(m)]
        if rng.random() < 0.5:
            # a positive row bounds the region; keeps larger real blocks in play
            A[0] = [rng.randint(1, max_entry) for _ in range(n)]
        A = tuple(map(tuple, A))
        hi = tuple(rng.randint(0, max_side - 1) for _ in range(nI))
        xr = [rng.randint(0, 2) for _ in range(nR)]
        xi = [rng.randint(0, h) for h in hi]
        b = tuple(dot(row, xr + xi) for row in A)
        c = tuple(rng.randint(-max_entry, max_entry) for _ in range(n))
        inst = MIPInstance(nR, nI, m, A, b, c, ((0,) * nI, hi))
        if validate_instance(inst) or not box_is_exhaustive(inst):
            continue
        return inst
    return None
