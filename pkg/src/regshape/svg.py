"""Hand-written SVG figures of rescaled profiles against the limit shapes."""

from __future__ import annotations

import math
from pathlib import Path

from .partitions import Partition, regularise
from .profile import profile_of, uniform_grid
from .shapes import Omega, omega_e

WIDTH, HEIGHT, MARGIN = 720, 400, 30


def _polyline_points(xs, ys, to_px) -> str:
    return " ".join(f"{px:.2f},{py:.2f}" for px, py in (to_px(x, y) for x, y in zip(xs, ys)))


def figure_svg(lam: Partition, e: int, window: tuple[float, float] = (-3.0, 3.0), step: float = 1e-3) -> str:
    """SVG source: the rescaled profile of ``reg_e(lam)`` in black, Omega in red, Omega_e in green."""
    if lam.n == 0:
        raise ValueError("cannot draw the empty partition")
    lo, hi = window
    top = max(abs(lo), abs(hi))
    scale = min((WIDTH - 2 * MARGIN) / (hi - lo), (HEIGHT - 2 * MARGIN) / top)

    def to_px(x: float, y: float) -> tuple[float, float]:
        return MARGIN + (x - lo) * scale, HEIGHT - MARGIN - y * scale

    mu = regularise(lam, e)
    p = profile_of(mu)
    r = math.sqrt(mu.n)
    pts = [(x / r, y / r) for x, y in p.breakpoints()]
    pts = [(lo, abs(lo))] + [q for q in pts if lo < q[0] < hi] + [(hi, abs(hi))]
    path = "M " + " L ".join(f"{px:.2f},{py:.2f}" for px, py in (to_px(x, y) for x, y in pts))

    grid = uniform_grid(lo, hi, step)
    omega = Omega().evaluate(grid)
    limit = omega_e(e).evaluate(grid)
    x0, y0 = to_px(lo, 0)
    x1, _ = to_px(hi, 0)
    ax, ay_top = to_px(0, top)
    _, ay_bot = to_px(0, 0)
    abs_line = _polyline_points([lo, 0, hi], [abs(lo), 0, abs(hi)], to_px)
    return "\n".join(
        [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f"<title>Rescaled profile of the {e}-regularisation of a partition of {lam.n}</title>",
            '<rect width="100%" height="100%" fill="white"/>',
            f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" stroke="#888" stroke-width="1"/>',
            f'<line x1="{ax:.2f}" y1="{ay_bot:.2f}" x2="{ax:.2f}" y2="{ay_top:.2f}" stroke="#888" stroke-width="1"/>',
            f'<polyline points="{abs_line}" fill="none" stroke="#bbb" stroke-dasharray="4 3" stroke-width="1"/>',
            f'<polyline id="omega" points="{_polyline_points(grid, omega, to_px)}" fill="none" '
            f'stroke="red" stroke-width="1.5"/>',
            f'<polyline id="omega-e" points="{_polyline_points(grid, limit, to_px)}" fill="none" '
            f'stroke="green" stroke-width="1.5"/>',
            f'<path id="profile" d="{path}" fill="none" stroke="black" stroke-width="1"/>',
            "</svg>",
            "",
        ]
    )


def emit_figure(lam: Partition, e: int, path: str | Path, window: tuple[float, float] = (-3.0, 3.0)) -> Path:
    path = Path(path)
    text = figure_svg(lam, e, window)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write figure to {path}: {exc}") from exc
    return path

