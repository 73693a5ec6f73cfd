"""Slice LPs, augmentation with a double test set, and the completion procedure."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from .errors import InfeasibleError, UnboundedError
from .exact import IntVec, dot
from .instance import MIPInstance, MixedVec
from .linalg import Circuit, columns, matrix_circuits, rank, solve_basis
from .oracle import enumerate_basic_integer_solutions
from .testsets import DEFAULT_LIMIT, TestDirection, bases_of, build_g_star, lift

log = logging.getLogger(__name__)

Direction = Union[TestDirection, MixedVec]

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class SliceResult:
    status: str
    point: Optional[MixedVec] = None
    value: Optional[Fraction] = None  # c^R . x^R of the slice optimum


@dataclass
class Step:
    start: MixedVec
    direction: Optional[Direction]  # None: repair inside the current slice
    end: MixedVec
    objective: Fraction

    @property
    def move(self) -> MixedVec:
        return self.end - self.start


@dataclass
class AugmentTrace:
    steps: list[Step] = field(default_factory=list)


def _vec(d: Direction) -> MixedVec:
    return d.vec if isinstance(d, TestDirection) else d


def real_circuits(inst: MIPInstance) -> list[Circuit]:
    if "circuits" not in inst._cache:
        inst._cache["circuits"] = matrix_circuits(inst.AR, inst.nR)
    return inst._cache["circuits"]


def signed_circuits(inst: MIPInstance) -> list[IntVec]:
    return [v for c in real_circuits(inst) for v in (c.vec, tuple(-x for x in c.vec))]


def slice_basic_points(inst: MIPInstance, zI: Sequence[int], feasible_only: bool = True) -> list[MixedVec]:
    rhs = [bi - dot(row, zI) for bi, row in zip(inst.b, inst.AI)]
    pts = []
    for B in bases_of(inst):
        xB = solve_basis(B, inst, rhs)
        if feasible_only and any(v < 0 for v in xB):
            continue
        real = [Fraction(0)] * inst.nR
        for col, v in zip(B.cols, xB):
            real[col] = v
        pts.append(MixedVec(tuple(real), tuple(zI)))
    return sorted(set(pts), key=MixedVec.entries)


def solve_slice_lp(inst: MIPInstance, zI: Sequence[int]) -> SliceResult:
    """min c^R x^R s.t. A^R x^R = b - A^I zI, x^R >= 0, by enumerating bases."""
    zI = tuple(int(z) for z in zI)
    if any(z < 0 for z in zI):
        return SliceResult(INFEASIBLE)
    pts = slice_basic_points(inst, zI)
    if not pts:
        return SliceResult(INFEASIBLE)
    cR = inst.cR
    for s in signed_circuits(inst):
        if all(v >= 0 for v in s) and dot(cR, s) < 0:
            return SliceResult(UNBOUNDED)
    best = min(pts, key=lambda p: (dot(cR, p.real), p.entries()))
    return SliceResult(OPTIMAL, best, Fraction(dot(cR, best.real)))


def recession_ray(inst: MIPInstance) -> Optional[IntVec]:
    """A nonnegative integer kernel vector of A with negative cost, if any.

    For rational data a feasible MIP is unbounded exactly when its LP
    relaxation is, i.e. when such a circuit of A exists.
    """
    for c in matrix_circuits(inst.A, inst.n):
        for v in (c.vec, tuple(-x for x in c.vec)):
            if all(x >= 0 for x in v) and dot(inst.c, v) < 0:
                return v
    return None


def _sorted_directions(inst: MIPInstance, T: Sequence[Direction]) -> list[Direction]:
    return sorted(T, key=lambda d: (dot(inst.c, _vec(d).entries()), _vec(d).entries()))


def improvement_step(
    inst: MIPInstance,
    x: MixedVec,
    T: Sequence[Direction],
    _slices: Optional[dict] = None,
) -> Optional[tuple[Direction, MixedVec]]:
    """First direction (by cost, then lexicographic) whose target slice beats ``x``.

    The circuit part of the move is implicit: the new point is the exact
    optimum of the slice at ``x.integral + t.integral``.
    """
    cache = {} if _slices is None else _slices
    cx = inst.objective(x)
    for t in _sorted_directions(inst, T):
        v = _vec(t)
        if not any(v.integral):
            continue
        z = tuple(a + b for a, b in zip(x.integral, v.integral))
        if min(z) < 0:
            continue
        if z not in cache:
            cache[z] = solve_slice_lp(inst, z)
        res = cache[z]
        if res.status == UNBOUNDED:
            raise UnboundedError(f"slice at {z} is unbounded")
        if res.status == OPTIMAL and inst.objective(res.point) < cx:
            return t, res.point
    return None


def augment(
    inst: MIPInstance,
    x0: MixedVec,
    T: Sequence[Direction],
    max_steps: Optional[int] = None,
) -> tuple[MixedVec, AugmentTrace]:
    if not inst.is_feasible(x0):
        raise InfeasibleError("starting point is not feasible")
    ray = recession_ray(inst)
    if ray is not None:
        raise UnboundedError(f"objective unbounded along {ray}")
    trace = AugmentTrace()
    slices: dict = {}
    res = solve_slice_lp(inst, x0.integral)
    slices[x0.integral] = res
    if res.status == UNBOUNDED:
        raise UnboundedError(f"slice at {x0.integral} is unbounded")
    x = res.point
    if inst.objective(x) < inst.objective(x0):
        trace.steps.append(Step(x0, None, x, inst.objective(x)))
    visited = {x.integral}
    while max_steps is None or len(trace.steps) < max_steps:
        found = improvement_step(inst, x, T, slices)
        if found is None:
            break
        t, nxt = found
        if nxt.integral in visited:
            raise RuntimeError(f"integer part {nxt.integral} revisited")
        visited.add(nxt.integral)
        trace.steps.append(Step(x, t, nxt, inst.objective(nxt)))
        x = nxt
    return x, trace


def find_initial_solution(inst: MIPInstance) -> Optional[MixedVec]:
    """Slice optimum of the lexicographically first box integer part with a feasible slice."""
    if inst.box is None:
        raise ValueError("initial solution search requires a box")
    lo, hi = inst.box
    for zI in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        pts = slice_basic_points(inst, zI)
        if pts:
            return min(pts, key=lambda p: (dot(inst.cR, p.real), p.entries()))
    return None


def support_independent(inst: MIPInstance, real: Sequence) -> bool:
    supp = [i for i, v in enumerate(real) if v]
    return rank(columns(inst.AR, supp)) == len(supp)


def sp_set(inst: MIPInstance, x: MixedVec, s: Union[Circuit, Sequence[int]]) -> list[MixedVec]:
    """Nonzero multiples ``alpha*s`` taking ``x`` to another basic point of its slice.

    Nonnegativity of the target is not required.
    """
    sv = s.vec if isinstance(s, Circuit) else tuple(s)
    alphas = {-x.real[i] / sv[i] for i in range(inst.nR) if sv[i]}
    out = []
    for a in sorted(alphas):
        if a == 0:
            continue
        real = tuple(xi + a * si for xi, si in zip(x.real, sv))
        if support_independent(inst, real):
            out.append(MixedVec(tuple(a * si for si in sv), (0,) * inst.nI))
    return out


def basis_of_point(inst: MIPInstance, x: MixedVec):
    supp = {i for i, v in enumerate(x.real) if v}
    for B in bases_of(inst):
        if supp <= set(B.cols):
            return B
    raise ValueError("point is not basic: real support is dependent")


def completion_procedure(
    inst: MIPInstance,
    x0: MixedVec,
    g: Sequence[int],
    circuits: Optional[Sequence[Circuit]] = None,
) -> list[MixedVec]:
    """Directions from ``x0`` to every basic point reachable in the slice of ``x0.integral + g``.

    Starts from the lift of ``g`` through a basis of ``x0`` and closes under
    circuit moves that land on basic points. Directions are kept cumulative
    (from ``x0``) so the integer part stays exactly ``g``.
    """
    B0 = basis_of_point(inst, x0)
    circuits = real_circuits(inst) if circuits is None else circuits
    t0 = lift(B0, g, inst).vec
    start = x0 + t0
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for c in circuits:
            for step in sp_set(inst, p, c):
                q = p + step
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
    return sorted({p - x0 for p in seen}, key=MixedVec.entries)


def padded_circuit_directions(inst: MIPInstance) -> list[MixedVec]:
    zero = (0,) * inst.nI
    return [MixedVec(tuple(Fraction(v) for v in s), zero) for s in signed_circuits(inst)]


def build_finite_test_set(
    inst: MIPInstance, G: Optional[Sequence[IntVec]] = None, limit: int = DEFAULT_LIMIT
) -> list[MixedVec]:
    """Completion directions from every boxed basic-integer solution along every ``g`` in G*,
    plus the padded circuits."""
    if inst.box is None:
        raise ValueError("finite test set requires a box")
    G = build_g_star(inst, limit) if G is None else G
    out = set(padded_circuit_directions(inst))
    for x in enumerate_basic_integer_solutions(inst):
        for g in G:
            z = tuple(a + b for a, b in zip(x.integral, g))
            if min(z) < 0 or not inst.in_box(z):
                continue
            out.update(completion_procedure(inst, x, g))
    return sorted(out, key=MixedVec.entries)


def circuit_decomposition(inst: MIPInstance, v: Sequence) -> list[tuple[Fraction, IntVec]]:
    """Write a kernel vector of A^R as a conformal sum of positive multiples of circuits."""
    rest = [Fraction(x) for x in v]
    if any(dot(row, rest) for row in inst.AR):
        raise ValueError("vector is not in ker(A^R)")
    parts = []
    while any(rest):
        for s in signed_circuits(inst):
            if all((si == 0) or (ri * si > 0) for si, ri in zip(s, rest)):
                lam = min(ri / si for si, ri in zip(s, rest) if si)
                parts.append((lam, s))
                rest = [ri - lam * si for ri, si in zip(rest, s)]
                break
        else:  # pragma: no cover - conformal decomposition always exists
            raise RuntimeError("no conformal circuit found")
    return parts
