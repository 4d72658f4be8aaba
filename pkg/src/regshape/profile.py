"""Russian-convention border profiles of Young diagrams.

The diagram of a partition is rotated so that the box of node ``(a, b)``
has top vertex ``(a - b, a + b)`` and semi-diagonal 1. Its upper rim is a
1-Lipschitz path with slopes +-1 between consecutive integers, equal to
``|x|`` outside ``[-lambda_1, h]``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np

from .partitions import Partition, conjugate


@dataclass(frozen=True)
class Profile:
    """Border path of a Young diagram.

    ``steps[k]`` is the slope on ``(left + k, left + k + 1)``.
    """

    left: int
    steps: tuple[int, ...]
    n: int

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Path ordinates at the integers ``left, left + 1, ..., right``."""
        ys = [abs(self.left)]
        for s in self.steps:
            ys.append(ys[-1] + s)
        return tuple(ys)

    @property
    def right(self) -> int:
        return self.left + len(self.steps)

    def __call__(self, x: float) -> float:
        return eval_profile(self, x)

    def breakpoints(self) -> list[tuple[int, int]]:
        """Integer vertices ``(x, omega(x))`` where the slope changes, ends included."""
        c = corners(self)
        xs = sorted(set(c.inner) | set(c.outer))
        return [(x, self.at(x)) for x in xs]

    def at(self, x: int) -> int:
        """Exact value at an integer abscissa."""
        if x <= self.left or x >= self.right:
            return abs(x)
        return self.heights[x - self.left]


class Corners(NamedTuple):
    inner: tuple[int, ...]
    outer: tuple[int, ...]


def profile_of(lam: Partition) -> Profile:
    """Build the Russian-convention profile of ``lam``.

    Walking the boundary from the end of the first row, a step down one row
    is a +1 slope and a step left one column is a -1 slope.
    """
    parts = lam.parts
    if not parts:
        return Profile(left=0, steps=(), n=0)
    cols = conjugate(lam).parts
    steps: list[int] = []
    r = 0
    for c in range(parts[0], 0, -1):
        while r < cols[c - 1]:
            steps.append(1)
            r += 1
        steps.append(-1)
    return Profile(left=-parts[0], steps=tuple(steps), n=lam.n)


def eval_profile(p: Profile, x: float) -> float:
    """Piecewise-linear value of the profile at a real abscissa."""
    if x <= p.left or x >= p.right:
        return abs(x)
    k = math.floor(x - p.left)
    base = p.heights[k]
    return base + p.steps[k] * (x - (p.left + k))


def eval_profile_many(p: Profile, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    if not p.steps:
        return np.abs(xs)
    grid = np.arange(p.left, p.right + 1, dtype=float)
    inside = np.interp(xs, grid, np.asarray(p.heights, dtype=float))
    return np.where((xs <= p.left) | (xs >= p.right), np.abs(xs), inside)


def rescaled_eval(p: Profile, s: float) -> float:
    """``omega(s * sqrt(n)) / sqrt(n)``."""
    if p.n == 0:
        raise ValueError("the rescaled profile is undefined for the empty partition")
    r = math.sqrt(p.n)
    return eval_profile(p, s * r) / r


def corners(p: Profile) -> Corners:
    """Inner corners (slope -1 then +1) and outer corners (+1 then -1)."""
    if not p.steps:
        return Corners(inner=(0,), outer=())
    slopes = (-1,) + p.steps + (1,)
    inner, outer = [], []
    for k in range(len(slopes) - 1):
        x = p.left + k
        if slopes[k] == -1 and slopes[k + 1] == 1:
            inner.append(x)
        elif slopes[k] == 1 and slopes[k + 1] == -1:
            outer.append(x)
    return Corners(tuple(inner), tuple(outer))


def support(p: Profile) -> tuple[int, int] | None:
    """``(inf, sup)`` of ``{x : omega(x) != |x|}``, or ``None`` for the empty diagram."""
    if p.n == 0:
        return None
    c = corners(p)
    return c.inner[0], c.inner[-1]


def area_above_abs(p: Profile) -> Fraction:
    """Exact area between the path and ``|x|``; equals ``2n``."""
    total = Fraction(0)
    for k in range(len(p.steps)):
        x0 = p.left + k
        d0 = p.heights[k] - abs(x0)
        d1 = p.heights[k + 1] - abs(x0 + 1)
        total += Fraction(d0 + d1, 2)
    return total


def sup_distance(
    p: Profile,
    g: Callable,
    window: tuple[float, float] = (-3.0, 3.0),
    grid_step: float = 1e-3,
    grid_values: np.ndarray | None = None,
) -> float:
    """Sup of ``|rescaled profile - g|`` over a window.

    The maximum is taken over the rescaled corners inside the window plus a
    uniform grid ``lo + k * grid_step``. Since both curves are 1-Lipschitz
    the true sup exceeds the returned value by at most ``2 * grid_step``.
    ``grid_values`` may carry ``g`` precomputed on that uniform grid.
    """
    if not grid_step > 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    if p.n == 0:
        raise ValueError("sup_distance needs a non-empty partition")
    lo, hi = window
    grid = uniform_grid(lo, hi, grid_step)
    r = math.sqrt(p.n)
    c = corners(p)
    bps = np.array(sorted(set(c.inner) | set(c.outer)), dtype=float) / r
    bps = bps[(bps >= lo) & (bps <= hi)]
    if grid_values is None:
        grid_values = evaluate_many(g, grid)
    elif len(grid_values) != len(grid):
        raise ValueError("grid_values does not match the grid")
    d_grid = np.abs(eval_profile_many(p, grid * r) / r - grid_values)
    d_bps = np.abs(eval_profile_many(p, bps * r) / r - evaluate_many(g, bps))
    return float(max(d_grid.max(initial=0.0), d_bps.max(initial=0.0)))


def uniform_grid(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def evaluate_many(g: Callable, xs) -> np.ndarray:
    """Evaluate ``g`` on an array, using its batch ``evaluate`` method when present."""
    xs = np.asarray(xs, dtype=float)
    batch = getattr(g, "evaluate", None)
    if batch is not None:
        return np.asarray(batch(xs), dtype=float)
    return np.array([g(float(x)) for x in xs], dtype=float)


def profile_csv(p: Profile, rescaled: bool = False) -> str:
    """Breakpoint rows ``x,omega`` (rescaled rows carry an extra ``n`` column)."""
    if rescaled and p.n == 0:
        raise ValueError("cannot rescale the empty partition")
    r = math.sqrt(p.n) if rescaled else 1.0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rescaled:
        w.writerow(["x", "omega", "n"])
        for x, y in p.breakpoints():
            w.writerow([f"{x / r:.12g}", f"{y / r:.12g}", p.n])
    else:
        w.writerow(["x", "omega"])
        w.writerows(p.breakpoints())
    return buf.getvalue()


def write_profile_csv(p: Profile, path: str | Path, rescaled: bool = False) -> None:
    text = profile_csv(p, rescaled)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write profile CSV to {path}: {exc}") from exc
