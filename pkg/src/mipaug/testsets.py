"""Sign patterns, the cone families built from them, and the integer test sets.

``G*`` is the union of conic Graver bases of the cones cut out by sign
patterns over every basis of the real block; ``T*`` lifts it through every
basis. ``G^{A,b}`` restricts the cones to those realized by pairs of
basic-integer solutions inside the instance box.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cones import GE, LE, Cone, conic_graver, extreme_rays
from .exact import IntVec, RatVec, conformal_leq, dot, primitive, sub
from .instance import MIPInstance, MixedVec
from .linalg import Basis, basis_inverse_times, enumerate_bases, max_subdeterminant, rank

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 12


class TooLargeError(RuntimeError):
    """Raised when the sign-pattern enumeration exceeds the configured guard."""


@dataclass(frozen=True)
class SignPattern:
    """Rows (0-based) of ``B^-1 A^I`` that are ``>= 0`` on the difference."""

    basis: Basis
    plus: frozenset[int]


@dataclass(frozen=True, order=True)
class TestDirection:
    vec: MixedVec = field(compare=False)
    basis: Basis = field(compare=False)
    gen: IntVec = field(compare=False)
    key: tuple = field(default=(), repr=False)

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict:
        from .exact import fmt_rational

        return {
            "vec": [fmt_rational(x) for x in self.vec.entries()],
            "basis": list(self.basis.cols),
            "gen": list(self.gen),
        }


@dataclass
class DoubleTestSet:
    T: list[TestDirection]
    C: list  # linalg.Circuit


def bases_of(inst: MIPInstance) -> list[Basis]:
    if "bases" not in inst._cache:
        inst._cache["bases"] = enumerate_bases(inst)
    return inst._cache["bases"]


def binv_ai(inst: MIPInstance, B: Basis) -> list[RatVec]:
    """Rows of ``B^-1 A^I``."""
    key = ("binv_ai", B)
    if key not in inst._cache:
        inst._cache[key] = basis_inverse_times(B, inst, inst.AI)
    return inst._cache[key]


def _row_normals(inst: MIPInstance, bases: Sequence[Basis]) -> list[IntVec]:
    # scaling by a positive factor keeps the half-space
    return [primitive(row) for B in bases for row in binv_ai(inst, B)]


def sign_pattern(B: Basis, x1: MixedVec, x2: MixedVec, inst: MIPInstance) -> SignPattern:
    diff = sub(x2.integral, x1.integral)
    plus = frozenset(p for p, row in enumerate(binv_ai(inst, B)) if dot(row, diff) >= 0)
    return SignPattern(B, plus)


def cone_from_pattern(patterns: Sequence[SignPattern], inst: MIPInstance) -> Cone:
    rows = []
    for pat in patterns:
        for p, row in enumerate(binv_ai(inst, pat.basis)):
            rows.append((primitive(row), GE if p in pat.plus else LE))
    return Cone.build(inst.nI, rows)


def cone_of_pair(x1: MixedVec, x2: MixedVec, bases: Sequence[Basis], inst: MIPInstance) -> Cone:
    return cone_from_pattern([sign_pattern(B, x1, x2, inst) for B in bases], inst)


def lift(B: Basis, g: Sequence[int], inst: MIPInstance) -> TestDirection:
    """Kernel vector with integer part ``g`` and real part ``-B^-1 A^I g`` on ``B``."""
    g = tuple(int(x) for x in g)
    if len(g) != inst.nI:
        raise ValueError("generator length must equal nI")
    if not any(g):
        raise ValueError("cannot lift the zero vector")
    real = [Fraction(0)] * inst.nR
    for p, row in enumerate(binv_ai(inst, B)):
        real[B.cols[p]] = -dot(row, g)
    vec = MixedVec(tuple(real), g)
    assert not any(dot(r, vec.entries()) for r in inst.A), "lift left ker(A)"
    return TestDirection(vec, B, g, key=vec.entries())


def _union_graver(cones: Iterable[Cone]) -> set[IntVec]:
    out: set[IntVec] = set()
    for C in cones:
        out.update(conic_graver(C))
    return out


def build_g_ab(inst: MIPInstance, bases: Optional[Sequence[Basis]] = None) -> list[IntVec]:
    """Union of conic Graver bases of ``C(x1, x2)`` over ordered pairs of solutions in the box.

    With ``bases`` given (e.g. a single basis) the cones only use those bases.
    """
    from .oracle import enumerate_basic_integer_solutions

    if inst.box is None:
        raise ValueError("G^{A,b} requires enumeration box")
    bases = list(bases) if bases is not None else bases_of(inst)
    sols = enumerate_basic_integer_solutions(inst)
    if not sols:
        log.warning("no basic-integer solution in the box; G^{A,b} is empty")
        return []
    if len(sols) == 1:
        return []
    diffs = {sub(x2.integral, x1.integral) for x1 in sols for x2 in sols if x1 != x2}
    zero = (0,) * inst.nI
    cones = {
        cone_of_pair(MixedVec((), zero), MixedVec((), d), bases, inst) for d in diffs
    }
    return sorted(_union_graver(cones))


def _full_dimensional(C: Cone) -> bool:
    rays, lin = extreme_rays(C)
    return rank([list(v) for v in rays + lin]) == C.dim if rays or lin else C.dim == 0


def pattern_cells(inst: MIPInstance, bases: Sequence[Basis]) -> list[Cone]:
    """Full-dimensional cones among all sign lists over ``bases``.

    Every lower-dimensional sign-list cone is a face of one of these, and the
    Hilbert basis of a face is the part of the cone's Hilbert basis lying in it,
    so these cells carry the whole union.
    """
    planes = sorted({n if next(x for x in n if x) > 0 else tuple(-x for x in n)
                     for n in _row_normals(inst, bases) if any(n)})
    cells = [Cone.whole_space(inst.nI)]
    for n in planes:
        nxt = []
        for C in cells:
            for rel in (GE, LE):
                D = Cone.build(C.dim, list(C.rows) + [(n, rel)])
                if _full_dimensional(D):
                    nxt.append(D)
        cells = nxt
    return cells


def build_g_star(
    inst: MIPInstance,
    limit: int = DEFAULT_LIMIT,
    bases: Optional[Sequence[Basis]] = None,
    *,
    f_filter: bool = True,
) -> list[IntVec]:
    """Union of conic Graver bases of all sign-pattern cones (``G*``, or ``G*_B`` per basis)."""
    bases = list(bases) if bases is not None else bases_of(inst)
    if inst.m * len(bases) > limit:
        raise TooLargeError(
            f"G* too large; raise limit (m*r = {inst.m * len(bases)} > {limit})"
        )
    gens = sorted(_union_graver(pattern_cells(inst, bases)))
    return f_irreducible_filter(gens, inst) if f_filter else gens


def f_vector(z: Sequence[int], inst: MIPInstance) -> RatVec:
    out = [Fraction(x) for x in z]
    for B in bases_of(inst):
        out.extend(dot(row, z) for row in binv_ai(inst, B))
    return tuple(out)


def f_irreducible_filter(cands: Sequence[IntVec], inst: MIPInstance) -> list[IntVec]:
    """Drop ``z`` when another nonzero candidate has a conformally smaller f-image."""
    fs = {z: f_vector(z, inst) for z in cands}
    keep = []
    for z in cands:
        fz = fs[z]
        if not any(
            w != z and any(w) and fs[w] != fz and conformal_leq(fs[w], fz) for w in cands
        ):
            keep.append(z)
    return keep


def lift_all(inst: MIPInstance, gens: Iterable[IntVec], bases: Optional[Sequence[Basis]] = None) -> list[TestDirection]:
    bases = list(bases) if bases is not None else bases_of(inst)
    seen: dict[tuple, TestDirection] = {}
    for B in bases:
        for g in gens:
            t = lift(B, g, inst)
            seen.setdefault(t.key, t)
    return sorted(seen.values())


def build_t_star(inst: MIPInstance, G: Optional[Sequence[IntVec]] = None, limit: int = DEFAULT_LIMIT) -> list[TestDirection]:
    return lift_all(inst, build_g_star(inst, limit) if G is None else G)


def build_t_ab(inst: MIPInstance) -> list[TestDirection]:
    return lift_all(inst, build_g_ab(inst))


@dataclass
class NormCheck:
    direction: TestDirection
    delta: Fraction
    bound: Fraction
    norm: Fraction

    @property
    def ok(self) -> bool:
        return self.norm <= self.bound


@dataclass
class NormReport:
    max_subdet: int
    checks: list[NormCheck]

    @property
    def violations(self) -> list[NormCheck]:
        return [c for c in self.checks if not c.ok]


def basis_delta(inst: MIPInstance, B: Basis) -> Fraction:
    """``||B^-1 A^I||_inf``: largest absolute row sum."""
    return max(sum(abs(x) for x in row) for row in binv_ai(inst, B))


def check_norm_bound(inst: MIPInstance, dirs: Sequence[TestDirection]) -> NormReport:
    big = max_subdeterminant(inst)
    checks = []
    for t in dirs:
        delta = basis_delta(inst, t.basis)
        norm = max(abs(x) for x in t.vec.entries())
        checks.append(NormCheck(t, delta, delta * big, Fraction(norm)))
    return NormReport(big, checks)
