"""The majorization preorder and its equivalence on rational vectors.

``x`` is majorized by ``y`` (x ≺ y) when every prefix sum of the
decreasing rearrangement of ``x`` is at most the corresponding prefix
sum for ``y`` and the totals agree.  Because the boundary cases are
equalities of sums, all decisions are made in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .numerics import (
    DEFAULT_GUARD,
    DimensionMismatch,
    Perm,
    Rational,
    Vec,
    enumerate_perms,
)


@dataclass(frozen=True)
class SortedView:
    """Both rearrangements of a vector plus the witnessing permutation.

    ``sort_perm.apply(source) == descending``; ties are broken stably, so
    equal values keep their original relative order and the permutation is
    deterministic.
    """

    descending: Vec
    ascending: Vec
    sort_perm: Perm


def sort_desc(x: Vec) -> SortedView:
    """Sort ``x`` into decreasing and increasing order with a stable witness."""
    order = sorted(range(len(x)), key=x.__getitem__, reverse=True)
    descending = Vec(x[i] for i in order)
    ascending = Vec(reversed(descending.entries))
    return SortedView(descending, ascending, Perm(order).inverse())


def trace(x: Vec) -> Rational:
    """Exact sum of the entries."""
    return sum(x, Fraction(0))


def desc_prefix_sums(x: Vec) -> tuple[Rational, ...]:
    """Prefix sums of the decreasing rearrangement; the last entry is the trace."""
    acc = Fraction(0)
    out = []
    for v in sorted(x, reverse=True):
        acc += v
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class Violation:
    """Where the partial-sum criterion first fails.

    ``kind`` is ``"prefix"`` with a 1-based prefix length, or ``"total"``
    (then ``index == n``).  ``lhs``/``rhs`` are the offending sums.
    """

    kind: Literal["prefix", "total"]
    index: int
    lhs: Rational
    rhs: Rational


def first_violation(x: Vec, y: Vec) -> Violation | None:
    """Return the first reason why ``x`` is not majorized by ``y``, if any."""
    if len(x) != len(y):
        raise DimensionMismatch("majorization compares vectors of equal length")
    px = desc_prefix_sums(x)
    py = desc_prefix_sums(y)
    n = len(px)
    if px[-1] != py[-1]:
        return Violation("total", n, px[-1], py[-1])
    for k in range(n - 1):
        if px[k] > py[k]:
            return Violation("prefix", k + 1, px[k], py[k])
    return None


def majorizes(x: Vec, y: Vec) -> bool:
    """True iff ``x`` is majorized by ``y``.

    Argument order matters and is a classic source of bugs:
    ``majorizes(x, y)`` means ``x ≺ y``, i.e. ``y`` is the dominating
    vector.  Equivalently ``x = D y`` for some doubly stochastic ``D``
    (see :func:`majorkit.doubly_stochastic.witness_ds`).
    """
    return first_violation(x, y) is None


def equivalent(x: Vec, y: Vec) -> bool:
    """True iff ``x ≺ y`` and ``y ≺ x``, i.e. each is a rearrangement of the other."""
    return majorizes(x, y) and majorizes(y, x)


def permutohedron_vertices(alpha: Vec, guard: int = DEFAULT_GUARD) -> list[Vec]:
    """All distinct permutations of ``alpha``, in first-seen lexicographic order.

    These are the vertices of the permutohedron of ``alpha``, whose convex
    hull is exactly the set of vectors majorized by ``alpha``.
    """
    seen: set[Vec] = set()
    out: list[Vec] = []
    for p in enumerate_perms(len(alpha), guard):
        v = p.apply(alpha)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out
