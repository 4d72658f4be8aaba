import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regshape.partitions import Partition, conjugate, enumerate_partitions
from regshape.plancherel import MAX_EXACT, derive_seed, pmf_exact, rsk_shape, sample, uniforms


def longest_increasing(xs) -> int:
    best = [1] * len(xs)
    for j in range(len(xs)):
        for i in range(j):
            if xs[i] <= xs[j]:
                best[j] = max(best[j], best[i] + 1)
    return max(best, default=0)


def longest_decreasing(xs) -> int:
    return longest_increasing([-x for x in xs]) if len(set(xs)) == len(xs) else None


def total_variation(counts: Counter, n: int, total: int) -> float:
    return 0.5 * sum(
        abs(counts.get(lam, 0) / total - float(pmf_exact(lam))) for lam in enumerate_partitions(n)
    )


class TestExactPmf:
    def test_examples(self):
        assert pmf_exact(Partition((1,))) == 1
        assert pmf_exact(Partition((2, 1))) == Fraction(2, 3)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_normalised(self, n):
        assert sum(pmf_exact(lam) for lam in enumerate_partitions(n)) == 1

    def test_conjugation_invariant(self):
        for lam in enumerate_partitions(9):
            assert pmf_exact(lam) == pmf_exact(conjugate(lam))

    def test_bound(self):
        with pytest.raises(ValueError):
            pmf_exact(Partition((MAX_EXACT + 1,)))


class TestRsk:
    @given(st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=40, unique=True))
    @settings(max_examples=200)
    def test_schensted_first_row_and_column(self, xs):
        shape = rsk_shape(xs)
        assert shape.n == len(xs)
        assert shape[0] == longest_increasing(xs)
        assert len(shape) == longest_decreasing(xs)

    def test_ties_are_weakly_increasing(self):
        assert rsk_shape([0.5, 0.5, 0.5]) == Partition((3,))

    def test_permutation_conjugation(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            xs = rng.random(25).tolist()
            assert rsk_shape(xs[::-1]) == conjugate(rsk_shape(xs))


class TestSampler:
    def test_single_box(self):
        assert sample(1, 12345) == Partition((1,))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sample(0, 1)

    def test_deterministic(self):
        assert sample(500, 99) == sample(500, 99)
        assert uniforms(10, 5).tobytes() == uniforms(10, 5).tobytes()

    def test_different_seeds_differ(self):
        assert len({sample(200, s) for s in range(10)}) > 1

    @pytest.mark.parametrize("n", [2, 4])
    def test_small_tv_distance(self, n):
        total = 20000
        counts = Counter(sample(n, derive_seed(2024, n, t)) for t in range(total))
        assert total_variation(counts, n, total) <= 0.03

    def test_two_boxes_are_fair(self):
        total = 20000
        rows = sum(1 for t in range(total) if sample(2, derive_seed(5, t)) == Partition((2,)))
        assert abs(rows / total - 0.5) <= 0.02

    def test_first_row_scaling(self):
        n = 10_000
        vals = [sample(n, derive_seed(1, t))[0] / math.sqrt(n) for t in range(8)]
        assert 1.8 <= sum(vals) / len(vals) <= 2.2


class TestDeriveSeed:
    def test_deterministic_and_64_bit(self):
        s = derive_seed(42, 7, 3)
        assert s == derive_seed(42, 7, 3) and 0 <= s < 2**64

    def test_keys_matter(self):
        seeds = {derive_seed(42, n, t) for n in (10, 20) for t in range(50)}
        assert len(seeds) == 100

    def test_negative_base_seed(self):
        assert derive_seed(-1, 0) == derive_seed(2**64 - 1, 0)
