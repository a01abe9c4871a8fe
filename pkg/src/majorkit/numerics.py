"""Exact rational scalars, vectors, matrices, and permutations.

Everything in this package computes over arbitrary-precision rationals
(`fractions.Fraction`), so every comparison, partial sum, and equality
test downstream is decided exactly.  Decimal strings and binary64 floats
are converted losslessly at the boundary; no operation ever rounds.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Union

Rational = Fraction

RationalLike = Union[Fraction, int, float, str]

#: Largest size for which factorial-cost enumeration runs without an
#: explicit override.  8! = 40320 permutations is still sub-second; the
#: pairwise predicate loops in :mod:`majorkit.isotone` grow like (n!)**2
#: and are comfortable only up to n = 6.
DEFAULT_GUARD = 8


class DimensionMismatch(ValueError):
    """Operands have incompatible sizes."""


class GuardExceeded(ValueError):
    """A factorial-cost enumeration was requested above the guard size."""

    def __init__(self, n: int, guard: int):
        super().__init__(
            f"enumeration over size {n} exceeds the guard {guard}; "
            "pass a larger guard explicitly to override"
        )
        self.n = n
        self.guard = guard


def as_rational(value: RationalLike) -> Rational:
    """Convert ``value`` to an exact rational.

    Strings use the ``Fraction`` grammar ("7", "3/4", "0.25") and are read
    exactly as written.  Floats convert to the exact binary64 value they
    hold.  Booleans are rejected to catch accidental truth values.
    """
    if isinstance(value, bool):
        raise TypeError("boolean is not a rational scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str, float)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def format_rational(value: Rational) -> str:
    """Render as ``p`` or ``p/q``, the grammar :func:`as_rational` accepts."""
    return str(value)


class Vec:
    """Immutable vector of exact rationals, length at least 1."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[RationalLike]):
        tup = tuple(as_rational(v) for v in entries)
        if not tup:
            raise ValueError("a vector needs at least one entry")
        self._entries = tup

    @property
    def entries(self) -> tuple[Rational, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Rational]:
        return iter(self._entries)

    def __getitem__(self, i: int) -> Rational:
        return self._entries[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"Vec({', '.join(map(str, self._entries))})"

    def __add__(self, other: "Vec") -> "Vec":
        if not isinstance(other, Vec):
            return NotImplemented
        if len(other) != len(self):
            raise DimensionMismatch("vector lengths differ")
        return Vec(a + b for a, b in zip(self._entries, other._entries))

    def __sub__(self, other: "Vec") -> "Vec":
        if not isinstance(other, Vec):
            return NotImplemented
        if len(other) != len(self):
            raise DimensionMismatch("vector lengths differ")
        return Vec(a - b for a, b in zip(self._entries, other._entries))

    def scale(self, c: RationalLike) -> "Vec":
        c = as_rational(c)
        return Vec(c * v for v in self._entries)

    def dot(self, other: "Vec") -> Rational:
        if len(other) != len(self):
            raise DimensionMismatch("vector lengths differ")
        return sum((a * b for a, b in zip(self._entries, other._entries)),
                   Fraction(0))


class Mat:
    """Immutable rectangular matrix of exact rationals."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[RationalLike]]):
        grid = tuple(tuple(as_rational(v) for v in row) for row in rows)
        if not grid or not grid[0]:
            raise ValueError("a matrix needs at least one row and column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("matrix rows must all have the same length")
        self._rows = grid

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n: int, m: int | None = None) -> "Mat":
        m = n if m is None else m
        return cls([[1] * m for _ in range(n)])

    @property
    def rows(self) -> tuple[tuple[Rational, ...], ...]:
        return self._rows

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return len(self._rows[0])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def row(self, i: int) -> Vec:
        return Vec(self._rows[i])

    def col(self, j: int) -> Vec:
        return Vec(row[j] for row in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> Rational:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(map(str, row)) for row in self._rows)
        return f"Mat[{body}]"

    def __add__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise DimensionMismatch("matrix shapes differ")
        return Mat(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self._rows, other._rows)
        )

    def scale(self, c: RationalLike) -> "Mat":
        c = as_rational(c)
        return Mat(tuple(c * v for v in row) for row in self._rows)

    def transpose(self) -> "Mat":
        return Mat(zip(*self._rows))

    def __matmul__(self, other: "Mat | Vec"):
        if isinstance(other, Vec):
            if self.n_cols != len(other):
                raise DimensionMismatch(
                    f"cannot apply {self.n_rows}x{self.n_cols} matrix "
                    f"to a vector of length {len(other)}"
                )
            return Vec(
                sum((a * b for a, b in zip(row, other)), Fraction(0))
                for row in self._rows
            )
        if isinstance(other, Mat):
            if self.n_cols != other.n_rows:
                raise DimensionMismatch("inner matrix dimensions differ")
            cols = tuple(zip(*other._rows))
            # Skipping zero terms keeps products with permutation and
            # T-transform matrices, which dominate the call sites, cheap.
            return Mat(
                tuple(
                    sum((a * b for a, b in zip(row, col) if a and b),
                        Fraction(0))
                    for col in cols
                )
                for row in self._rows
            )
        return NotImplemented


class Perm:
    """Permutation of ``{0..n-1}`` in one-line (image) notation.

    ``p.image[i]`` is where index ``i`` is sent.  Applied to a vector,
    the entry at position ``j`` moves to position ``p(j)``, so that
    ``p.apply(x) == p.matrix() @ x``.
    """

    __slots__ = ("_image",)

    def __init__(self, image: Iterable[int]):
        img = tuple(int(i) for i in image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"{img!r} is not a permutation of 0..{len(img) - 1}")
        self._image = img

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Perm":
        img = list(range(n))
        img[i], img[j] = img[j], img[i]
        return cls(img)

    @property
    def image(self) -> tuple[int, ...]:
        return self._image

    def __len__(self) -> int:
        return len(self._image)

    def __call__(self, i: int) -> int:
        return self._image[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self._image == other._image

    def __hash__(self) -> int:
        return hash(self._image)

    def __repr__(self) -> str:
        return f"Perm{list(self._image)!r}"

    def compose(self, other: "Perm") -> "Perm":
        """Return ``self`` after ``other``: ``(self.compose(other))(i) == self(other(i))``."""
        if len(other) != len(self):
            raise DimensionMismatch("permutation sizes differ")
        return Perm(self._image[j] for j in other._image)

    def inverse(self) -> "Perm":
        inv = [0] * len(self._image)
        for i, j in enumerate(self._image):
            inv[j] = i
        return Perm(inv)

    def matrix(self) -> Mat:
        """0/1 matrix with a 1 at ``(p(j), j)``; ``matrix() @ x == apply(x)``."""
        n = len(self._image)
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(self._image):
            rows[i][j] = 1
        return Mat(rows)

    def apply(self, x: Vec) -> Vec:
        if len(x) != len(self._image):
            raise DimensionMismatch("permutation size differs from vector length")
        out: list[Rational | None] = [None] * len(x)
        for j, v in enumerate(x):
            out[self._image[j]] = v
        return Vec(out)  # type: ignore[arg-type]


def enumerate_perms(n: int, guard: int = DEFAULT_GUARD) -> Iterator[Perm]:
    """Stream all n! permutations of ``{0..n-1}`` in lexicographic image order.

    Raises :class:`GuardExceeded` immediately (not on first iteration)
    when ``n`` is above ``guard``; every factorial-cost scan in the
    package funnels through here so runaway enumerations fail fast and
    reproducibly.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > guard:
        raise GuardExceeded(n, guard)
    return (Perm(image) for image in itertools.permutations(range(n)))
