"""Doubly stochastic matrices: recognition, witnesses, and decomposition.

A doubly stochastic matrix is nonnegative with every row and column
summing to one.  This module recognises them exactly, constructs one
mapping ``y`` to ``x`` whenever ``x`` is majorized by ``y`` (a chain of
at most ``n - 1`` T-transforms between two permutations), decomposes any
of them into a convex combination of permutation matrices, and generates
seeded random instances for test campaigns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .majorization import Violation, first_violation, sort_desc
from .numerics import DimensionMismatch, Mat, Perm, Rational, Vec


class NotMajorized(ValueError):
    """Witness construction was asked for a pair with ``x`` not majorized by ``y``."""

    def __init__(self, violation: Violation):
        super().__init__(
            f"x is not majorized by y: {violation.kind} sum at index "
            f"{violation.index} gives {violation.lhs} vs {violation.rhs}"
        )
        self.violation = violation


@dataclass(frozen=True)
class DoublyStochastic:
    """A matrix checked exactly against the doubly stochastic invariants."""

    matrix: Mat

    def __post_init__(self):
        if not check_ds(self.matrix):
            raise ValueError("matrix is not doubly stochastic")

    @property
    def n(self) -> int:
        return self.matrix.n_rows


def check_ds(a: Mat) -> bool:
    """Exactly decide whether ``a`` is doubly stochastic.

    Raises :class:`DimensionMismatch` for non-square input; a rectangular
    matrix cannot satisfy the definition at all.
    """
    if not a.is_square:
        raise DimensionMismatch("doubly stochastic matrices are square")
    one = Fraction(1)
    for row in a.rows:
        if any(v < 0 for v in row):
            return False
        if sum(row) != one:
            return False
    for j in range(a.n_cols):
        if sum(row[j] for row in a.rows) != one:
            return False
    return True


@dataclass(frozen=True)
class TTransform:
    """One averaging step ``(1-t)I + t Q`` for the transposition ``Q`` of ``i, j``."""

    i: int
    j: int
    t: Rational

    def as_matrix(self, n: int) -> Mat:
        rows = [[Fraction(1) if r == c else Fraction(0) for c in range(n)]
                for r in range(n)]
        s = Fraction(1) - self.t
        rows[self.i][self.i] = s
        rows[self.j][self.j] = s
        rows[self.i][self.j] = self.t
        rows[self.j][self.i] = self.t
        return Mat(rows)


@dataclass(frozen=True)
class MajorizationWitness:
    """A doubly stochastic ``D`` with ``D y = x``, plus how it was built.

    ``matrix`` equals ``unsort.matrix() @ T_k ... T_1 @ presort.matrix()``
    where the T-transforms act on the sorted frame.  At most ``n - 1``
    transforms are ever needed.
    """

    matrix: DoublyStochastic
    transforms: tuple[TTransform, ...]
    presort: Perm
    unsort: Perm


def witness_ds(x: Vec, y: Vec) -> MajorizationWitness:
    """Build a doubly stochastic witness for ``x`` majorized by ``y``.

    Works on the decreasing rearrangements: at each step the largest
    sorted position where the current vector still exceeds the target
    donates mass to the first later position where it falls short.  That
    keeps the working vector sorted, keeps the target majorized by it,
    and pins at least one more coordinate per step, so the chain length
    is at most ``n - 1``.  Raises :class:`NotMajorized` otherwise.
    """
    if len(x) != len(y):
        raise DimensionMismatch("witness requires vectors of equal length")
    violation = first_violation(x, y)
    if violation is not None:
        raise NotMajorized(violation)

    n = len(x)
    sx = sort_desc(x)
    sy = sort_desc(y)
    xs = list(sx.descending)
    vs = list(sy.descending)

    transforms: list[TTransform] = []
    chain = Mat.identity(n)
    while xs != vs:
        j = max(i for i in range(n) if xs[i] < vs[i])
        k = min(i for i in range(j + 1, n) if xs[i] > vs[i])
        delta = min(vs[j] - xs[j], xs[k] - vs[k])
        step = TTransform(j, k, delta / (vs[j] - vs[k]))
        transforms.append(step)
        chain = step.as_matrix(n) @ chain
        vs[j] -= delta
        vs[k] += delta

    presort = sy.sort_perm
    unsort = sx.sort_perm.inverse()
    d = unsort.matrix() @ chain @ presort.matrix()
    return MajorizationWitness(DoublyStochastic(d), tuple(transforms),
                               presort, unsort)


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """Convex combination of permutation matrices reproducing a source matrix."""

    terms: tuple[tuple[Rational, Perm], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("decomposition needs at least one term")
        n = len(self.terms[0][1])
        if any(w <= 0 for w, _ in self.terms):
            raise ValueError("weights must be positive")
        if sum(w for w, _ in self.terms) != 1:
            raise ValueError("weights must sum to one")
        if len(self.terms) > (n - 1) ** 2 + 1:
            raise ValueError("too many terms for a minimal-style decomposition")

    @property
    def n(self) -> int:
        return len(self.terms[0][1])

    def recompose(self) -> Mat:
        out = self.terms[0][1].matrix().scale(self.terms[0][0])
        for w, p in self.terms[1:]:
            out = out + p.matrix().scale(w)
        return out


def _perfect_matching(support: list[list[bool]]) -> list[int] | None:
    """Row-to-column perfect matching on a square support, or ``None``.

    Augmenting-path search with rows processed in order and columns tried
    in ascending index, so the result is deterministic.
    """
    n = len(support)
    match_col = [-1] * n  # column -> row

    def try_row(r: int, seen: list[bool]) -> bool:
        for c in range(n):
            if support[r][c] and not seen[c]:
                seen[c] = True
                if match_col[c] < 0 or try_row(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not try_row(r, [False] * n):
            return None
    cols = [-1] * n
    for c, r in enumerate(match_col):
        cols[r] = c
    return cols


def _nullspace_vector(columns: list[list[Rational]]) -> list[Rational]:
    """A nontrivial rational solution of ``sum_i c_i * columns[i] = 0``.

    Plain Gaussian elimination; callers only invoke this when the columns
    are guaranteed linearly dependent.
    """
    k = len(columns)
    m = len(columns[0])
    rows = [[columns[i][r] for i in range(k)] for r in range(m)]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_of_col[c] = r
        r += 1
    free = next(c for c in range(k) if c not in pivot_of_col)
    coeffs = [Fraction(0)] * k
    coeffs[free] = Fraction(1)
    for c, pr in pivot_of_col.items():
        coeffs[c] = -rows[pr][free]
    return coeffs


def _trim_to_caratheodory(terms: list[tuple[Rational, Perm]],
                          n: int) -> list[tuple[Rational, Perm]]:
    """Reduce a convex combination to at most ``(n-1)**2 + 1`` terms.

    While the combination is longer than the affine dimension allows,
    the vectorised permutation matrices (with a homogenising 1) must be
    linearly dependent; shifting weights along the dependency zeroes at
    least one of them without changing the recomposition.
    """
    bound = (n - 1) ** 2 + 1
    while len(terms) > bound:
        columns = []
        for _, p in terms:
            flat = [v for row in p.matrix().rows for v in row]
            flat.append(Fraction(1))
            columns.append(flat)
        coeffs = _nullspace_vector(columns)
        if all(c <= 0 for c in coeffs):
            coeffs = [-c for c in coeffs]
        theta = min(w / c for (w, _), c in zip(terms, coeffs) if c > 0)
        terms = [
            (w - theta * c, p)
            for (w, p), c in zip(terms, coeffs)
            if w - theta * c != 0
        ]
    return terms


def birkhoff(d: DoublyStochastic | Mat) -> BirkhoffDecomposition:
    """Decompose a doubly stochastic matrix into permutation matrices.

    Greedy peeling: find a permutation inside the nonzero pattern,
    subtract the minimal entry along it, repeat.  Each step empties at
    least one cell, and a final exact trim enforces the
    ``(n-1)**2 + 1`` term bound.  The recomposition is exact.
    """
    if isinstance(d, Mat):
        d = DoublyStochastic(d)
    n = d.n
    work = [list(row) for row in d.matrix.rows]
    terms: list[tuple[Rational, Perm]] = []
    while any(v != 0 for row in work for v in row):
        support = [[v != 0 for v in row] for row in work]
        cols = _perfect_matching(support)
        if cols is None:
            raise RuntimeError("no permutation inside the support; input invalid")
        weight = min(work[i][cols[i]] for i in range(n))
        terms.append((weight, Perm(cols).inverse()))
        for i in range(n):
            work[i][cols[i]] -= weight
    terms = _trim_to_caratheodory(terms, n)
    return BirkhoffDecomposition(tuple(terms))


def random_ds(n: int, seed: int, steps: int = 8,
              max_weight: int = 1000) -> DoublyStochastic:
    """Seeded random convex combination of ``steps`` permutation matrices.

    Weights are integers up to ``max_weight`` normalised exactly, so the
    denominators stay small; the same seed always yields the same matrix.
    """
    if n < 1 or steps < 1:
        raise ValueError("n and steps must be positive")
    rng = random.Random(seed)
    raw = []
    for _ in range(steps):
        image = list(range(n))
        rng.shuffle(image)
        raw.append((rng.randint(1, max_weight), Perm(image)))
    total = sum(w for w, _ in raw)
    out = raw[0][1].matrix().scale(Fraction(raw[0][0], total))
    for w, p in raw[1:]:
        out = out + p.matrix().scale(Fraction(w, total))
    return DoublyStochastic(out)
