"""Exact integer/rational vector helpers shared by every other module.

Vectors are plain tuples: ``tuple[int, ...]`` for integer vectors and
``tuple[Fraction, ...]`` for rational ones. Nothing here touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction
IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
OrthantId = tuple[int, ...]  # entries +1 / -1


def fmt_rational(q) -> str:
    """Render ``p/q`` in lowest terms; integers print bare."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_vec(v: Iterable) -> str:
    return "(" + ", ".join(fmt_rational(x) for x in v) + ")"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def clear_denominators(v: Sequence) -> IntVec:
    """Scale a rational vector by the lcm of its denominators (positive factor)."""
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return tuple(int(Fraction(x) * den) for x in v)


def primitive(v: Sequence) -> IntVec:
    """Divide by the content, keeping the direction (no sign normalization)."""
    iv = clear_denominators(v)
    g = vec_gcd(iv)
    if g == 0:
        return iv
    return tuple(x // g for x in iv)


def normalize_primitive(v: Sequence[int]) -> IntVec:
    """Primitive representative of the line through ``v``, first nonzero entry positive.

    >>> normalize_primitive((2, -4))
    (1, -2)
    >>> normalize_primitive((-3, 3, 0))
    (1, -1, 0)
    """
    p = primitive(v)
    lead = next((x for x in p if x != 0), 0)
    if lead == 0:
        raise ValueError("zero vector has no primitive representative")
    return p if lead > 0 else tuple(-x for x in p)


def conformal_leq(a: Sequence, b: Sequence) -> bool:
    """Conformal order: same orthant and ``|a_i| <= |b_i|`` for every coordinate."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return all(x * y >= 0 and abs(x) <= abs(y) for x, y in zip(a, b))


def in_orthant(v: Sequence, k: OrthantId) -> bool:
    return all(x == 0 or (x > 0) == (s > 0) for x, s in zip(v, k))


def orthant_members(vectors: Iterable[Sequence], k: OrthantId) -> list:
    return [v for v in vectors if in_orthant(v, k)]


def all_orthants(d: int) -> list[OrthantId]:
    """All 2^d sign vectors, ``(+,...,+)`` first."""
    return [tuple(s) for s in product((1, -1), repeat=d)]


def neg(v: Sequence) -> tuple:
    return tuple(-x for x in v)


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def sup_norm(v: Sequence):
    return max((abs(x) for x in v), default=0)
