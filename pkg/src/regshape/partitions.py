"""Integer partitions, e-ladders and James's e-regularisation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Mapping

MAX_ENUMERATION = 40


def _check_e(e: int) -> None:
    if int(e) != e or e < 2:
        raise ValueError(f"e must be an integer >= 2, got {e!r}")


@dataclass(frozen=True)
class Partition:
    """A non-increasing sequence of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((3, 1, 0))``
    equals ``Partition((3, 1))``. The empty tuple is the partition of 0.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for p in parts:
            if p < 1:
                raise ValueError(f"parts must be positive integers, got {self.parts!r}")
        for p, q in zip(parts, parts[1:]):
            if p < q:
                raise ValueError(f"parts must be non-increasing, got {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return format_partition(self)

    def nodes(self) -> Iterator[tuple[int, int]]:
        """Yield the nodes ``(a, b)`` of the Young diagram, row by row (1-based)."""
        for a, row in enumerate(self.parts, start=1):
            for b in range(1, row + 1):
                yield a, b

    def contains(self, node: tuple[int, int]) -> bool:
        a, b = node
        return 1 <= a <= len(self.parts) and 1 <= b <= self.parts[a - 1]


def parse_partition(text: str) -> Partition:
    """Parse the comma-separated serialisation, e.g. ``"4,4,2,1"``; ``""`` is empty."""
    text = text.strip()
    if not text:
        return Partition()
    return Partition(tuple(int(tok) for tok in text.split(",")))


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam.parts)


def ladder_number(node: tuple[int, int], e: int) -> int:
    """Return the e-ladder number ``a + (e-1)(b-1)`` of the node ``(a, b)``."""
    _check_e(e)
    a, b = node
    if a < 1 or b < 1:
        raise ValueError(f"node coordinates must be >= 1, got {node!r}")
    return a + (e - 1) * (b - 1)


def ladder_size(ell: int, e: int) -> int:
    """Number of lattice nodes ``(a, b)`` with ``a, b >= 1`` on the ladder ``ell``."""
    return 1 + (ell - 1) // (e - 1)


def ladder_counts(lam: Partition, e: int) -> dict[int, int]:
    """Map each ladder index to the number of nodes of ``lam`` lying on it."""
    _check_e(e)
    counts: Counter[int] = Counter()
    for a, row in enumerate(lam.parts, start=1):
        for b in range(1, row + 1):
            counts[a + (e - 1) * (b - 1)] += 1
    return dict(sorted(counts.items()))


def is_e_regular(lam: Partition, e: int) -> bool:
    """True iff no part of ``lam`` is repeated ``e`` or more times."""
    _check_e(e)
    p = lam.parts
    return all(p[i] > p[i + e - 1] for i in range(len(p) - e + 1))


def partition_from_ladder_counts(counts: Mapping[int, int], e: int) -> Partition:
    """Fill the top of every ladder and read the result off row by row.

    Raises ``ValueError`` if a count exceeds the size of its ladder, or if
    the filled node set is not a Young diagram.
    """
    _check_e(e)
    rows: dict[int, list[int]] = {}
    for ell, k in counts.items():
        if k == 0:
            continue
        size = ladder_size(ell, e)
        if k < 0 or k > size:
            raise ValueError(f"ladder {ell} holds at most {size} nodes, got {k}")
        # highest position of a ladder = largest column, i.e. smallest row
        for b in range(size, size - k, -1):
            rows.setdefault(ell - (e - 1) * (b - 1), []).append(b)
    h = max(rows, default=0)
    parts = tuple(len(rows.get(a, ())) for a in range(1, h + 1))
    gaps = any(sorted(cols) != list(range(1, len(cols) + 1)) for cols in rows.values())
    if gaps or any(p < q for p, q in zip(parts, parts[1:])) or (parts and parts[-1] == 0):
        raise ValueError(f"ladder counts {dict(counts)!r} do not fill a diagram")
    return Partition(parts)


def regularise(lam: Partition, e: int) -> Partition:
    """James's e-regularisation: move every node as high as possible in its ladder."""
    result = partition_from_ladder_counts(ladder_counts(lam, e), e)
    assert result.n == lam.n
    return result


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    p = lam.parts
    if not p:
        return Partition()
    return Partition(tuple(sum(1 for row in p if row >= b) for b in range(1, p[0] + 1)))


def hook_lengths(lam: Partition) -> list[list[int]]:
    conj = conjugate(lam).parts
    return [
        [row - b + conj[b - 1] - a + 1 for b in range(1, row + 1)]
        for a, row in enumerate(lam.parts, start=1)
    ]


def num_standard_tableaux(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` by the hook length formula."""
    denom = 1
    for row in hook_lengths(lam):
        for h in row:
            denom *= h
    count, rem = divmod(factorial(lam.n), denom)
    assert rem == 0
    return count


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, bound: int = MAX_ENUMERATION) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    ``n`` above ``bound`` is rejected to keep the enumeration small.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > bound:
        raise ValueError(f"n={n} exceeds the enumeration bound {bound}")
    return [Partition(p) for p in _partitions(n, n)]


def partitions_up_to(n_max: int) -> Iterable[Partition]:
    for n in range(n_max + 1):
        yield from enumerate_partitions(n)
