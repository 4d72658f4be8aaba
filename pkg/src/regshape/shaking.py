"""Shaking of graph regions, and the flattenings of regular-partition profiles.

For a function ``g >= |x|`` the graph region is
``{(x, y) : |x| <= y <= g(x)}``. Shaking along slope ``alpha`` slides
each slope-``alpha`` slice of that region until it touches ``y = -x``.
The line of a slice is identified by its anchor ``x0``: it passes
through ``(x0, -x0)``.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

from .partitions import Partition, ladder_counts, regularise
from .profile import Profile, corners, profile_of


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous curve through ``(xs[i], ys[i])``, equal to ``|x|`` outside.

    Coordinates may be ``Fraction`` for exact work or floats.
    """

    xs: tuple
    ys: tuple

    def __post_init__(self) -> None:
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys must have the same length")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("breakpoint abscissae must be strictly increasing")

    @classmethod
    def from_points(cls, pts) -> "PiecewiseLinear":
        pts = list(pts)
        return cls(tuple(x for x, _ in pts), tuple(y for _, y in pts))

    def points(self) -> list[tuple]:
        return list(zip(self.xs, self.ys))

    def __call__(self, x):
        xs = self.xs
        if not xs or x <= xs[0] or x >= xs[-1]:
            if xs and x == xs[0]:
                return self.ys[0]
            if xs and x == xs[-1]:
                return self.ys[-1]
            return abs(x)
        j = bisect_right(xs, x)
        x0, x1 = xs[j - 1], xs[j]
        y0, y1 = self.ys[j - 1], self.ys[j]
        return y0 + _div((y1 - y0) * (x - x0), x1 - x0)

    def evaluate(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if not self.xs:
            return np.abs(xs)
        bx = np.array([float(v) for v in self.xs])
        by = np.array([float(v) for v in self.ys])
        inside = np.interp(xs, bx, by)
        return np.where((xs < bx[0]) | (xs > bx[-1]), np.abs(xs), inside)

    def csv_text(self) -> str:
        rows = ["x,y"] + [f"{_fmt(x)},{_fmt(y)}" for x, y in zip(self.xs, self.ys)]
        return "\n".join(rows) + "\n"

    def write_csv(self, path: str | Path) -> None:
        path = Path(path)
        try:
            path.write_text(self.csv_text())
        except OSError as exc:
            raise OSError(f"cannot write curve CSV to {path}: {exc}") from exc


@dataclass(frozen=True)
class Flattening(PiecewiseLinear):
    """A flattened profile together with its meeting abscissae, indexed by corner."""

    meets: tuple = field(default=())


class SliceQuery(NamedTuple):
    alpha: float
    x0: float

    def direction(self) -> tuple[float, float]:
        norm = math.hypot(1.0, float(self.alpha))
        return 1.0 / norm, float(self.alpha) / norm


def _div(a, b):
    """Quotient that stays exact for integer operands."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{float(v):.12g}"
    if isinstance(v, int):
        return str(v)
    return f"{v:.12g}"


def profile_curve(p: Profile) -> PiecewiseLinear:
    """The profile as an exact integer-breakpoint curve."""
    return PiecewiseLinear.from_points(p.breakpoints())


# -- slices -------------------------------------------------------------

# float pieces this short come from the line grazing |x| or the curve
_SLIVER = 1e-12


def _slice_window(alpha, x0):
    """Abscissae where the slice line is above ``|x|``: ``[x0, -x0 (1+a)/(1-a)]``."""
    if x0 >= 0:
        return None
    return x0, _div(-x0 * (1 + alpha), 1 - alpha)


def slice_segments(g, q: SliceQuery) -> list[tuple]:
    """Abscissa intervals of the slice ``{|x| <= y <= g(x)}`` on the query line.

    Zero-length pieces are dropped. ``g`` is either a :class:`PiecewiseLinear`
    (exact breakpoint scan, exact for ``Fraction`` inputs), a :class:`Profile`,
    or any function exposing ``slope_argmin`` whose difference with a
    slope-``alpha`` line is unimodal.
    """
    alpha, x0 = q
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha!r}")
    window = _slice_window(alpha, x0)
    if window is None:
        return []
    if isinstance(g, Profile):
        g = profile_curve(g)
    if isinstance(g, PiecewiseLinear):
        return _slice_piecewise(g, alpha, x0, window)
    return _slice_unimodal(g, alpha, x0, window)


def _slice_piecewise(g: PiecewiseLinear, alpha, x0, window) -> list[tuple]:
    lo, hi = window

    def line(x):
        return -x0 + alpha * (x - x0)

    knots = [lo]
    if g.xs:
        i, j = bisect_right(g.xs, lo), bisect_left(g.xs, hi)
        knots.extend(g.xs[i:j])
    if lo < 0 < hi:
        knots.append(0)
    knots.append(hi)
    knots = sorted(set(knots))

    pieces: list[list] = []
    hs = [g(x) - line(x) for x in knots]
    for u, v, hu, hv in zip(knots, knots[1:], hs, hs[1:]):
        if hu >= 0 and hv >= 0:
            a, b = u, v
        elif hu >= 0 > hv:
            a, b = u, u + _div((v - u) * hu, hu - hv)
        elif hu < 0 <= hv:
            a, b = u + _div((v - u) * hu, hu - hv), v
        else:
            continue
        if b <= a or (isinstance(b - a, float) and b - a <= _SLIVER):
            continue
        if pieces and pieces[-1][1] == a:
            pieces[-1][1] = b
        else:
            pieces.append([a, b])
    return [tuple(p) for p in pieces]


def _slice_unimodal(g, alpha, x0, window) -> list[tuple]:
    lo, hi = window

    def h(x):
        return g(x) - (-x0 + alpha * (x - x0))

    m = min(max(g.slope_argmin(alpha), lo), hi)
    if h(m) >= 0:
        return [(lo, hi)]
    pieces = []
    if h(lo) > 0:
        pieces.append((lo, brentq(h, lo, m, xtol=1e-14)))
    if h(hi) > 0:
        pieces.append((brentq(h, m, hi, xtol=1e-14), hi))
    # round-off slivers where the line only touches |x|
    return [(a, b) for a, b in pieces if b - a > _SLIVER]


def slice_width(g, q: SliceQuery):
    """Measure of the slice projected on the x-axis (exact for exact inputs)."""
    return sum((b - a for a, b in slice_segments(g, q)), 0)


def slice_length(g, q: SliceQuery) -> float:
    """Euclidean length of the slice along its line."""
    return float(slice_width(g, q)) * math.hypot(1.0, float(q.alpha))


# -- discrete shaking -----------------------------------------------------


def discrete_shake(g, alpha: float, grid: Sequence[float]) -> PiecewiseLinear:
    """Shake the graph region of ``g`` along ``alpha`` on a grid of anchors.

    Each anchor with a non-empty slice contributes the segment from
    ``(x0, -x0)`` with the slice's length. The returned curve interpolates
    the far endpoints lying on the upper envelope of these segments; the
    others (covered by a longer neighbour) carry no rim information. If the
    grid stops short of the region, the curve is closed by the anchor point
    on the left and by a horizontal step to ``y = x`` on the right.
    """
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha!r}")
    anchors = np.asarray([float(x) for x in grid])
    if anchors.size and np.any(np.diff(anchors) <= 0):
        raise ValueError("anchor grid must be strictly increasing")
    widths = np.array([float(slice_width(g, SliceQuery(alpha, float(x)))) for x in anchors])
    pos = np.flatnonzero(widths > 0)
    if pos.size == 0:
        return PiecewiseLinear((), ())
    x0 = anchors[pos]
    ends_x = x0 + widths[pos]
    ends_y = -x0 + alpha * widths[pos]
    rim = _segment_envelope(x0, ends_x, alpha, ends_x)
    keep = ends_y >= rim - 1e-12 * (1.0 + np.abs(rim))
    pts: dict[float, float] = {}
    for x, y in zip(ends_x[keep], ends_y[keep]):
        x, y = float(x), float(y)
        if y > pts.get(x, -math.inf):
            pts[x] = y
    xs = sorted(pts)
    ys = [pts[x] for x in xs]
    first = pos[0]
    left = anchors[first - 1] if first > 0 else anchors[first]
    if xs[0] > left and abs(ys[0] - abs(xs[0])) > 1e-12:
        xs.insert(0, float(left))
        ys.insert(0, float(abs(left)))
    if abs(ys[-1] - abs(xs[-1])) > 1e-12 and ys[-1] > xs[-1]:
        xs.append(ys[-1])
        ys.append(ys[-1])
    return PiecewiseLinear(tuple(xs), tuple(ys))


def _segment_envelope(starts, ends, alpha, queries, chunk: int = 512) -> np.ndarray:
    """Max ordinate at each query abscissa over segments ``[(s, -s), end]`` of slope alpha."""
    out = np.empty(len(queries))
    for k in range(0, len(queries), chunk):
        q = queries[k : k + chunk, None]
        covered = (starts[None, :] <= q) & (q <= ends[None, :])
        vals = np.where(covered, -starts[None, :] + alpha * (q - starts[None, :]), -np.inf)
        out[k : k + chunk] = vals.max(axis=1)
    return out


# -- flattenings --------------------------------------------------------


def _alpha_exact(e: int) -> Fraction:
    return Fraction(e - 2, e)


def _check_regular_profile(p: Profile, e: int) -> None:
    if int(e) != e or e < 2:
        raise ValueError(f"e must be an integer >= 2, got {e!r}")
    run = 0
    for s in p.steps:
        run = run + 1 if s == 1 else 0
        if run >= e:
            raise ValueError(f"profile is not the profile of an {e}-regular partition")


def _padded_points(p: Profile) -> list[tuple[Fraction, Fraction]]:
    pts = [(Fraction(x), Fraction(y)) for x, y in p.breakpoints()]
    lx, rx = pts[0][0] - 2, pts[-1][0] + 2
    return [(lx, -lx)] + pts + [(rx, rx)]


def _simplify(pts: list[tuple]) -> list[tuple]:
    out: list[tuple] = []
    for pt in pts:
        while len(out) >= 2:
            (ax, ay), (bx, by) = out[-2], out[-1]
            if (by - ay) * (pt[0] - bx) == (pt[1] - by) * (bx - ax):
                out.pop()
            else:
                break
        out.append(pt)
    while len(out) >= 2 and out[1][1] == -out[1][0] and out[0][1] == -out[0][0]:
        out.pop(0)
    while len(out) >= 2 and out[-2][1] == out[-2][0] and out[-1][1] == out[-1][0]:
        out.pop()
    return out


def flatten_outer(p: Profile, e: int) -> Flattening:
    """Outer flattening: cut every outer-corner notch by the slope ``1 - 2/e`` line.

    From each outer corner ``c_k`` (left to right) the line is followed
    leftwards until it meets the current curve, at ``meets[k-1]``.
    """
    _check_regular_profile(p, e)
    alpha = _alpha_exact(e)
    c = corners(p)
    pts = _padded_points(p)
    meets = []
    for k, ck in enumerate(c.outer):
        idx = next(i for i, (x, _) in enumerate(pts) if x == ck)
        yc = pts[idx][1]

        def h(pt):
            return pt[1] - (yc + alpha * (pt[0] - ck))

        j = idx - 1
        while h(pts[j]) < 0:
            j -= 1
        hj, hj1 = h(pts[j]), h(pts[j + 1])
        (xj, _), (xj1, _) = pts[j], pts[j + 1]
        x_meet = xj if hj == 0 else xj + (xj1 - xj) * hj / (hj - hj1)
        ik = c.inner[k]
        assert ik - 1 <= x_meet < ik, (x_meet, ik)
        meets.append(x_meet)
        mid = [] if x_meet == xj else [(x_meet, yc + alpha * (x_meet - ck))]
        pts = pts[: j + 1] + mid + pts[idx:]
    pts = _simplify(pts)
    return Flattening(tuple(x for x, _ in pts), tuple(y for _, y in pts), tuple(meets))


def flatten_inner(p: Profile, e: int) -> Flattening:
    """Inner flattening: from each inner corner ``i_k`` (right to left, last one
    excluded) follow the slope ``1 - 2/e`` line rightwards to the curve.

    ``meets[k-1]`` is the meeting abscissa for ``i_k``.
    """
    _check_regular_profile(p, e)
    alpha = _alpha_exact(e)
    c = corners(p)
    pts = _padded_points(p)
    r = len(c.outer)
    meets: list = [None] * r
    for k in range(r - 1, -1, -1):
        ik = c.inner[k]
        idx = next(i for i, (x, _) in enumerate(pts) if x == ik)
        yi = pts[idx][1]

        def h(pt):
            return pt[1] - (yi + alpha * (pt[0] - ik))

        j = idx + 1
        while h(pts[j]) > 0:
            j += 1
        hj0, hj = h(pts[j - 1]), h(pts[j])
        (xj0, _), (xj, _) = pts[j - 1], pts[j]
        x_meet = xj if hj == 0 else xj0 + (xj - xj0) * hj0 / (hj0 - hj)
        assert ik < x_meet <= c.inner[k + 1], (x_meet, ik)
        meets[k] = x_meet
        tail = pts[j:] if x_meet == xj else [(x_meet, yi + alpha * (x_meet - ik))] + pts[j:]
        pts = pts[: idx + 1] + tail
    pts = _simplify(pts)
    return Flattening(tuple(x for x, _ in pts), tuple(y for _, y in pts), tuple(meets))


def difference_range(g: PiecewiseLinear, h: PiecewiseLinear) -> tuple:
    """Exact ``(min, max)`` of ``g - h`` over the reals (both agree with ``|x|`` far out)."""
    xs = sorted(set(g.xs) | set(h.xs))
    if not xs:
        return 0, 0
    diffs = [g(x) - h(x) for x in xs] + [0]
    return min(diffs), max(diffs)


# -- regularisation preserves slices ---------------------------------------


def shake_equivalence_check(lam: Partition, e: int, grid_step: float = 0.1) -> dict:
    """Check that ``lam`` and its e-regularisation shake identically.

    Compares ladder counts exactly, then the slope ``1 - 2/e`` slice lengths
    of both graph regions on anchors from the left edge to 0.
    """
    mu = regularise(lam, e)
    counts_equal = ladder_counts(lam, e) == ladder_counts(mu, e)
    alpha = 1.0 - 2.0 / e
    g_lam, g_mu = profile_curve(profile_of(lam)), profile_curve(profile_of(mu))
    left = -max(lam.parts[0] if lam.parts else 0, mu.parts[0] if mu.parts else 0) - 1
    count = int(math.floor(-left / grid_step)) + 1
    anchors = [left + k * grid_step for k in range(count)]
    worst = 0.0
    for x0 in anchors:
        q = SliceQuery(alpha, x0)
        worst = max(worst, abs(slice_length(g_lam, q) - slice_length(g_mu, q)))
    return {
        "pass": bool(counts_equal and worst <= 1e-9),
        "worst_abs_discrepancy": worst,
        "n_anchors": len(anchors),
        "ladder_counts_equal": counts_equal,
    }


def write_report_json(report: dict, path: str | Path) -> None:
    path = Path(path)
    keys = ("pass", "worst_abs_discrepancy", "n_anchors")
    try:
        path.write_text(json.dumps({k: report[k] for k in keys}, indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
