"""MIP instances in standard form and their line-oriented text format.

Format (``#`` starts a comment)::

    dims <nR> <nI> <m>
    row <nR+nI integers>        # m times, real columns first
    rhs <m integers>
    cost <nR+nI integers>
    box <nI lo...> <nI hi...>   # optional
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import IntVec, RatVec, dot
from .linalg import rank


class InstanceError(ValueError):
    """Malformed or invalid instance text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class MixedVec:
    """A point or direction: rational real part, integer integral part."""

    real: RatVec
    integral: IntVec

    @classmethod
    def of(cls, real, integral) -> "MixedVec":
        return cls(tuple(Fraction(x) for x in real), tuple(int(x) for x in integral))

    @classmethod
    def split(cls, entries, nR: int) -> "MixedVec":
        entries = list(entries)
        ints = []
        for x in entries[nR:]:
            q = Fraction(x)
            if q.denominator != 1:
                raise ValueError(f"integer coordinate {q} is not integral")
            ints.append(int(q))
        return cls.of(entries[:nR], ints)

    def entries(self) -> tuple:
        return self.real + self.integral

    def __add__(self, other: "MixedVec") -> "MixedVec":
        return MixedVec(
            tuple(a + b for a, b in zip(self.real, other.real)),
            tuple(a + b for a, b in zip(self.integral, other.integral)),
        )

    def __sub__(self, other: "MixedVec") -> "MixedVec":
        return self + (-other)

    def __neg__(self) -> "MixedVec":
        return MixedVec(tuple(-a for a in self.real), tuple(-a for a in self.integral))

    def scaled(self, alpha) -> "MixedVec":
        """``alpha * self``; alpha must keep the integral part integral."""
        ints = [Fraction(alpha) * x for x in self.integral]
        if any(q.denominator != 1 for q in ints):
            raise ValueError("scaling breaks integrality")
        return MixedVec(tuple(alpha * a for a in self.real), tuple(int(q) for q in ints))

    def is_zero(self) -> bool:
        return not any(self.real) and not any(self.integral)


@dataclass(frozen=True)
class MIPInstance:
    nR: int
    nI: int
    m: int
    A: tuple[IntVec, ...]
    b: IntVec
    c: IntVec
    box: Optional[tuple[IntVec, IntVec]] = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return self.nR + self.nI

    @property
    def AR(self) -> list[IntVec]:
        return [row[: self.nR] for row in self.A]

    @property
    def AI(self) -> list[IntVec]:
        return [row[self.nR:] for row in self.A]

    @property
    def cR(self) -> IntVec:
        return self.c[: self.nR]

    @property
    def cI(self) -> IntVec:
        return self.c[self.nR:]

    def with_cost(self, c) -> "MIPInstance":
        return MIPInstance(self.nR, self.nI, self.m, self.A, self.b, tuple(int(x) for x in c), self.box)

    def with_rhs(self, b) -> "MIPInstance":
        return MIPInstance(self.nR, self.nI, self.m, self.A, tuple(b), self.c, self.box)

    def with_box(self, box) -> "MIPInstance":
        return MIPInstance(self.nR, self.nI, self.m, self.A, self.b, self.c, box)

    def objective(self, x: MixedVec) -> Fraction:
        return Fraction(dot(self.c, x.entries()))

    def residual(self, x: MixedVec) -> tuple:
        e = x.entries()
        return tuple(dot(row, e) - bi for row, bi in zip(self.A, self.b))

    def is_feasible(self, x: MixedVec) -> bool:
        return all(v >= 0 for v in x.entries()) and not any(self.residual(x))

    def in_box(self, zI) -> bool:
        if self.box is None:
            return True
        lo, hi = self.box
        return all(l <= z <= h for l, z, h in zip(lo, zI, hi))

    def to_dict(self) -> dict:
        return {
            "nR": self.nR,
            "nI": self.nI,
            "m": self.m,
            "A": [list(r) for r in self.A],
            "b": list(self.b),
            "c": list(self.c),
            "box": None if self.box is None else {"lo": list(self.box[0]), "hi": list(self.box[1])},
        }


def make_instance(A, b, c, nR: int, box=None, *, validate: bool = True) -> MIPInstance:
    A = tuple(tuple(int(x) for x in row) for row in A)
    nI = len(A[0]) - nR if A else 0
    if box is not None:
        box = (tuple(int(x) for x in box[0]), tuple(int(x) for x in box[1]))
    inst = MIPInstance(nR, nI, len(A), A, tuple(int(x) for x in b), tuple(int(x) for x in c), box)
    if validate:
        problems = validate_instance(inst)
        if problems:
            raise InstanceError("; ".join(problems))
    return inst


def validate_instance(inst: MIPInstance) -> list[str]:
    """Violated invariants; an empty list means the instance is valid."""
    out = []
    if inst.m < 1:
        out.append("need at least one row")
    if inst.nI < 1:
        out.append("no integer variables (pure LP not supported)")
    if inst.nR < inst.m:
        out.append(f"nR={inst.nR} < m={inst.m} (pure IP or too few real columns)")
    if len(inst.A) != inst.m or any(len(r) != inst.n for r in inst.A):
        out.append("dimension mismatch in A")
    if len(inst.b) != inst.m:
        out.append("dimension mismatch in rhs")
    if len(inst.c) != inst.n:
        out.append("dimension mismatch in cost")
    if not out and rank(inst.AR) < inst.m:
        out.append("real part rank-deficient; preprocess rows")
    if inst.box is not None:
        lo, hi = inst.box
        if len(lo) != inst.nI or len(hi) != inst.nI:
            out.append("dimension mismatch in box")
        if any(l < 0 for l in lo):
            out.append("negative lower bound in box")
        if any(l > h for l, h in zip(lo, hi)):
            out.append("empty box (lo > hi)")
    return out


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise InstanceError(f"expected integers: {exc}", lineno) from None


def parse_instance(text: str) -> MIPInstance:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((lineno, body[0], body[1:]))
    if not lines:
        raise InstanceError("empty instance")
    it = iter(lines)

    def expect(keyword):
        try:
            lineno, kw, rest = next(it)
        except StopIteration:
            raise InstanceError(f"unexpected end of input, expected '{keyword}'") from None
        if kw != keyword:
            raise InstanceError(f"expected '{keyword}', got '{kw}'", lineno)
        return lineno, _ints(rest, lineno)

    lineno, dims = expect("dims")
    if len(dims) != 3 or min(dims) < 0:
        raise InstanceError("dims takes three nonnegative integers: nR nI m", lineno)
    nR, nI, m = dims
    n = nR + nI
    A = []
    for _ in range(m):
        lineno, row = expect("row")
        if len(row) != n:
            raise InstanceError(f"dimension mismatch: row has {len(row)} entries, expected {n}", lineno)
        A.append(row)
    lineno, b = expect("rhs")
    if len(b) != m:
        raise InstanceError(f"dimension mismatch: rhs has {len(b)} entries, expected {m}", lineno)
    lineno, c = expect("cost")
    if len(c) != n:
        raise InstanceError(f"dimension mismatch: cost has {len(c)} entries, expected {n}", lineno)
    box = None
    rest = list(it)
    if rest:
        lineno, kw, toks = rest[0]
        if kw != "box":
            raise InstanceError(f"unexpected trailing content '{kw}'", lineno)
        vals = _ints(toks, lineno)
        if len(vals) != 2 * nI:
            raise InstanceError(f"dimension mismatch: box needs {2 * nI} integers", lineno)
        box = (tuple(vals[:nI]), tuple(vals[nI:]))
        if len(rest) > 1:
            raise InstanceError(f"unexpected trailing content '{rest[1][1]}'", rest[1][0])
    inst = MIPInstance(nR, nI, m, tuple(tuple(r) for r in A), tuple(b), tuple(c), box)
    problems = validate_instance(inst)
    if problems:
        raise InstanceError("; ".join(problems))
    return inst


def serialize_instance(inst: MIPInstance) -> str:
    lines = [f"dims {inst.nR} {inst.nI} {inst.m}"]
    lines += ["row " + " ".join(map(str, r)) for r in inst.A]
    lines.append("rhs " + " ".join(map(str, inst.b)))
    lines.append("cost " + " ".join(map(str, inst.c)))
    if inst.box is not None:
        lines.append("box " + " ".join(map(str, inst.box[0] + inst.box[1])))
    return "\n".join(lines) + "\n"
