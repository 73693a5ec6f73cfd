"""Rational cones, extreme rays, Hilbert bases and conic Graver bases.

A cone is stored as canonical rows ``(normal, rel)`` meaning ``normal . z >= 0``
(``GE``) or ``<= 0`` (``LE``). Normals are primitive with a positive leading
entry, so ``(n, GE)`` and ``(-n, LE)`` collapse to the same row.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .exact import IntVec, OrthantId, all_orthants, dot, normalize_primitive, primitive
from .linalg import nullspace, rank

GE, LE = "ge", "le"


class NotPointedError(ValueError):
    pass


def _canonical_row(normal: Sequence, rel: str):
    p = primitive(normal)
    lead = next((x for x in p if x), 0)
    if lead == 0:
        return None  # 0 >= 0: no constraint
    if lead < 0:
        p = tuple(-x for x in p)
        rel = LE if rel == GE else GE
    return (p, rel)


@dataclass(frozen=True)
class Cone:
    dim: int
    rows: tuple[tuple[IntVec, str], ...]

    @classmethod
    def build(cls, dim: int, rows: Iterable[tuple[Sequence, str]]) -> "Cone":
        canon = set()
        for normal, rel in rows:
            if len(normal) != dim:
                raise ValueError("row dimension does not match cone dimension")
            if rel not in (GE, LE):
                raise ValueError(f"unknown relation {rel!r}")
            r = _canonical_row(normal, rel)
            if r is not None:
                canon.add(r)
        return cls(dim, tuple(sorted(canon)))

    @classmethod
    def whole_space(cls, dim: int) -> "Cone":
        return cls(dim, ())

    def ge_normals(self) -> list[IntVec]:
        """All rows rewritten as ``n . z >= 0``."""
        return [n if rel == GE else tuple(-x for x in n) for n, rel in self.rows]

    def contains(self, z: Sequence) -> bool:
        for n, rel in self.rows:
            v = dot(n, z)
            if (v < 0) if rel == GE else (v > 0):
                return False
        return True

    def negated(self) -> "Cone":
        return Cone.build(self.dim, [(n, LE if rel == GE else GE) for n, rel in self.rows])

    def to_dict(self) -> dict:
        return {"dim": self.dim, "rows": [{"rel": rel, "normal": list(n)} for n, rel in self.rows]}


def cone_intersect_orthant(C: Cone, k: OrthantId) -> Cone:
    extra = []
    for i, s in enumerate(k):
        e = [0] * C.dim
        e[i] = 1
        extra.append((e, GE if s > 0 else LE))
    return Cone.build(C.dim, list(C.rows) + extra)


def lineality(C: Cone) -> list[IntVec]:
    return nullspace(C.ge_normals(), C.dim)


def extreme_rays(C: Cone) -> tuple[list[IntVec], list[IntVec]]:
    """Primitive extreme rays of ``C`` modulo its lineality space, plus a lineality basis.

    Rays come from every (d-1)-subset of constraints (inequalities and the
    equations cutting out the lineality complement) whose kernel is a line.
    """
    return _extreme_rays(C)


@lru_cache(maxsize=None)
def _extreme_rays(C: Cone) -> tuple[list[IntVec], list[IntVec]]:
    d = C.dim
    ineq = C.ge_normals()
    lin = nullspace(ineq, d) if ineq else [tuple(int(i == j) for j in range(d)) for i in range(d)]
    lin = [normalize_primitive(v) for v in lin]
    if len(lin) == d:
        return [], lin
    eqs = [list(v) for v in lin]
    rays = set()
    pool = [list(n) for n in ineq]
    need = d - 1 - len(eqs)
    for sub in combinations(range(len(pool)), need):
        M = eqs + [pool[i] for i in sub]
        if rank(M) != d - 1:
            continue
        (r,) = nullspace(M, d)
        for cand in (r, tuple(-x for x in r)):
            if all(dot(n, cand) >= 0 for n in ineq):
                rays.add(cand)
    return sorted(rays), lin


def _box_points(rays: list[IntVec], d: int):
    lo = [sum(min(r[i], 0) for r in rays) for i in range(d)]
    hi = [sum(max(r[i], 0) for r in rays) for i in range(d)]
    return product(*(range(l, h + 1) for l, h in zip(lo, hi)))


@lru_cache(maxsize=None)
def _hilbert(C: Cone) -> tuple[IntVec, ...]:
    rays, lin = extreme_rays(C)
    if lin:
        raise NotPointedError("Hilbert basis requires pointed cone")
    if not rays:
        return ()
    normals = C.ge_normals()
    # strictly positive grading on C \ {0}: the kernel of the normals is trivial
    grade = [sum(n[i] for n in normals) for i in range(C.dim)]
    cands = []
    for z in _box_points(rays, C.dim):
        if any(z) and all(dot(n, z) >= 0 for n in normals):
            cands.append((dot(grade, z), z))
    cands.sort()
    kept: list[tuple[int, IntVec]] = []
    for g, z in cands:
        reducible = False
        for gh, h in kept:
            if gh >= g:
                break
            diff = tuple(a - b for a, b in zip(z, h))
            if all(dot(n, diff) >= 0 for n in normals):
                reducible = True
                break
        if not reducible:
            kept.append((g, z))
    return tuple(sorted(z for _, z in kept))


def hilbert_basis(C: Cone) -> list[IntVec]:
    """Minimal generating set of the integer points of a pointed cone.

    Candidates are the integer points of the cone inside the coordinate box
    spanned by the sum of the extreme rays (contains the fundamental
    parallelepiped of every simplicial subcone). A candidate is kept unless a
    kept element of strictly smaller degree can be subtracted inside the cone.
    """
    return list(_hilbert(C))


def conic_graver(C: Cone) -> list[IntVec]:
    """Union over all orthants of the Hilbert bases of ``C`` cut by the orthant."""
    return list(_conic_graver(C))


@lru_cache(maxsize=None)
def _conic_graver(C: Cone) -> tuple[IntVec, ...]:
    out: set[IntVec] = set()
    for k in all_orthants(C.dim):
        piece = cone_intersect_orthant(C, k)
        rays, _ = extreme_rays(piece)
        if not rays:
            continue
        out.update(_hilbert(piece))
    return tuple(sorted(out))


def parse_cone(text: str) -> Cone:
    """Read ``ge|le <d integers>`` rows (one per line, ``#`` comments)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        rel = toks[0].lower()
        if rel not in (GE, LE):
            raise ValueError(f"line {lineno}: expected 'ge' or 'le', got {toks[0]!r}")
        try:
            rows.append((tuple(int(t) for t in toks[1:]), rel))
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers") from None
    if not rows:
        raise ValueError("cone has no rows; give at least one to fix the dimension")
    dims = {len(n) for n, _ in rows}
    if len(dims) != 1 or 0 in dims:
        raise ValueError("all cone rows must have the same positive length")
    return Cone.build(dims.pop(), rows)


