"""Brute-force ground truth.

Nothing here calls the cone engine or the solver: solutions come from a plain
scan over the box and every basis, Hilbert checks from bounded searches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Any, Optional, Sequence

from .errors import InfeasibleError
from .exact import IntVec, conformal_leq, dot, sub
from .instance import MIPInstance, MixedVec
from .linalg import enumerate_bases, solve_basis


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class OracleReport:
    solutions: list[MixedVec] = field(default_factory=list)
    optimum: Optional[tuple[Fraction, list[MixedVec]]] = None
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _slice_points(inst: MIPInstance, zI: Sequence[int], bases) -> list[MixedVec]:
    rhs = [bi - dot(row, zI) for bi, row in zip(inst.b, inst.AI)]
    pts = set()
    for B in bases:
        xB = solve_basis(B, inst, rhs)
        if all(v >= 0 for v in xB):
            real = [Fraction(0)] * inst.nR
            for col, v in zip(B.cols, xB):
                real[col] = v
            pts.add(MixedVec(tuple(real), tuple(zI)))
    return list(pts)


def enumerate_basic_integer_solutions(inst: MIPInstance) -> list[MixedVec]:
    """Every feasible basic-integer point whose integer part lies in the box."""
    if inst.box is None:
        raise ValueError("enumeration requires a box")
    bases = enumerate_bases(inst)
    lo, hi = inst.box
    out: set[MixedVec] = set()
    for zI in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        out.update(_slice_points(inst, zI, bases))
    return sorted(out, key=MixedVec.entries)


def brute_force_optimum(inst: MIPInstance) -> tuple[Fraction, list[MixedVec]]:
    """Exact minimum over the enumerated solutions.

    A box scan cannot notice unboundedness; run the solver's recession check first.
    """
    sols = enumerate_basic_integer_solutions(inst)
    if not sols:
        raise InfeasibleError("no feasible basic-integer solution in the box")
    values = {x: inst.objective(x) for x in sols}
    best = min(values.values())
    return best, [x for x in sols if values[x] == best]


def verify_double_test_set(inst: MIPInstance, T: Sequence, include_zero: bool = True) -> OracleReport:
    """Check that every non-optimal enumerated point improves through one element of ``T``.

    An element works when the shifted integer part is nonnegative and its
    slice has a feasible basic point strictly better than the current one
    (the circuit repair). ``include_zero`` also tries moves inside the
    current slice, i.e. circuits alone.
    """
    sols = enumerate_basic_integer_solutions(inst)
    report = OracleReport(solutions=sols)
    if not sols:
        report.checks.append(Check("feasible", False, None))
        return report
    value, argmins = brute_force_optimum(inst)
    report.optimum = (value, argmins)
    bases = enumerate_bases(inst)
    shifts = {tuple(getattr(t, "vec", t).integral) for t in T}
    if include_zero:
        shifts.add((0,) * inst.nI)

    @lru_cache(maxsize=None)
    def slice_best(zI):
        vals = [inst.objective(p) for p in _slice_points(inst, zI, bases)]
        return min(vals) if vals else None

    for x in sols:
        cx = inst.objective(x)
        if cx <= value:
            continue
        ok = False
        for s in sorted(shifts):
            z = tuple(a + b for a, b in zip(x.integral, s))
            if min(z) < 0:
                continue
            best = slice_best(z)
            if best is not None and best < cx:
                ok = True
                break
        report.checks.append(Check(f"improves {x.entries()}", ok, None if ok else x))
    return report


def _in_cone(rows, z) -> bool:
    for n, rel in rows:
        v = dot(n, z)
        if (v < 0) if rel == "ge" else (v > 0):
            return False
    return True


def _same_orthant_parts(H, p):
    # elements usable in a conformal decomposition of p
    return [h for h in H if any(h) and conformal_leq(h, p)]


def _decomposes(H: Sequence[IntVec], p: IntVec) -> bool:
    @lru_cache(maxsize=None)
    def go(q):
        if not any(q):
            return True
        return any(go(sub(q, h)) for h in _same_orthant_parts(H, q))

    return go(tuple(p))


def verify_hilbert(C, H: Sequence[IntVec], radius: int = 4) -> OracleReport:
    """Membership, completeness within ``radius`` and minimality of a generating set.

    ``C`` is anything with ``dim`` and ``rows`` of ``(normal, 'ge'|'le')``.
    Completeness: each integer point of ``C`` with sup-norm <= radius is a
    nonnegative integer sum of elements of ``H`` conformal to it.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    H = [tuple(h) for h in H]
    report = OracleReport()
    for h in H:
        inside = any(h) and _in_cone(C.rows, h)
        report.checks.append(Check(f"member {h}", inside, None if inside else h))
    missing = None
    for p in product(range(-radius, radius + 1), repeat=C.dim):
        if any(p) and _in_cone(C.rows, p) and not _decomposes(H, p):
            missing = p
            break
    report.checks.append(Check("completeness", missing is None, missing))
    redundant = None
    for h in H:
        others = [g for g in H if g != h]
        if _decomposes(others, h):
            redundant = h
            break
    report.checks.append(Check("minimality", redundant is None, redundant))
    return report


def verify_test_set(inst: MIPInstance, D: Sequence[MixedVec]) -> OracleReport:
    """Single-step test-set property over the enumerated points.

    Directions with a nonzero integer part are applied once; pure real
    directions may be scaled by any positive step, as in an LP.
    """
    sols = enumerate_basic_integer_solutions(inst)
    report = OracleReport(solutions=sols)
    if not sols:
        return report
    value, argmins = brute_force_optimum(inst)
    report.optimum = (value, argmins)
    for x in sols:
        cx = inst.objective(x)
        if cx <= value:
            continue
        ok = False
        for d in D:
            cd = dot(inst.c, d.entries())
            if cd >= 0:
                continue
            if any(d.integral):
                y = x + d
                ok = all(v >= 0 for v in y.entries()) and inst.in_box(y.integral)
            else:
                ok = all(dv >= 0 for xv, dv in zip(x.real, d.real) if xv == 0)
            if ok:
                break
        report.checks.append(Check(f"improves {x.entries()}", ok, None if ok else x))
    return report
