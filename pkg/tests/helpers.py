"""Shared seeded generators and tiny oracles for the suite."""

from __future__ import annotations

import random
from fractions import Fraction

from majorkit import Mat, Perm, Vec, random_ds


def rand_fraction(rng: random.Random, lo: int = -10, hi: int = 10,
                  max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_vec(rng: random.Random, n: int, lo: int = -10, hi: int = 10,
             max_den: int = 6) -> Vec:
    return Vec(rand_fraction(rng, lo, hi, max_den) for _ in range(n))


def rand_strictly_decreasing(rng: random.Random, n: int) -> Vec:
    values = rng.sample(range(-20, 21), n)
    den = rng.randint(1, 4)
    return Vec(Fraction(v, den) for v in sorted(values, reverse=True))


def rand_perm(rng: random.Random, n: int) -> Perm:
    image = list(range(n))
    rng.shuffle(image)
    return Perm(image)


def majorizing_pair(rng: random.Random, n: int) -> tuple[Vec, Vec]:
    """A pair (x, y) with x majorized by y, built as x = D y."""
    y = rand_vec(rng, n)
    d = random_ds(n, seed=rng.getrandbits(32), steps=rng.randint(1, 6))
    return d.matrix @ y, y


def naive_mat_vec(a: Mat, x: Vec) -> Vec:
    """Independent matrix application: plain double loop, no shortcuts."""
    out = []
    for i in range(a.n_rows):
        acc = Fraction(0)
        for j in range(a.n_cols):
            acc += a.rows[i][j] * x[j]
        out.append(acc)
    return Vec(out)
