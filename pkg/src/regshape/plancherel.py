"""Plancherel measure: exact probabilities and RSK sampling."""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from math import factorial

import numpy as np

from .partitions import Partition, num_standard_tableaux

MAX_EXACT = 30


def pmf_exact(lam: Partition, bound: int = MAX_EXACT) -> Fraction:
    """``#Std(lam)**2 / n!`` as an exact rational."""
    if lam.n > bound:
        raise ValueError(f"n={lam.n} exceeds the exact-pmf bound {bound}")
    return Fraction(num_standard_tableaux(lam) ** 2, factorial(lam.n))


def derive_seed(seed: int, *keys: int) -> int:
    """Mix a base seed with integer keys into an independent 64-bit seed.

    Uses numpy's ``SeedSequence`` hashing, so the derived value depends on
    every key and adding a key never changes seeds derived from other keys.
    """
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(k) for k in keys)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def uniforms(n: int, seed: int) -> np.ndarray:
    """``n`` uniform reals ``k * 2**-53`` from a PCG64 stream seeded by ``seed``."""
    rng = np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    return rng.random(n)


def rsk_shape(values) -> Partition:
    """Shape of the RSK insertion tableau of a sequence of reals.

    Only the rows are tracked. A value equal to an entry already in a row
    is placed after it, so ties act as in row insertion of words.
    """
    rows: list[list[float]] = []
    for x in values:
        for row in rows:
            pos = bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                break
            row[pos], x = x, row[pos]
        else:
            rows.append([x])
    shape = tuple(len(r) for r in rows)
    assert all(p >= q for p, q in zip(shape, shape[1:]))
    return Partition(shape)


def sample(n: int, seed: int) -> Partition:
    """Draw a partition of ``n`` from the Plancherel measure.

    The result is a deterministic function of ``(n, seed)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return rsk_shape(uniforms(n, seed).tolist())
