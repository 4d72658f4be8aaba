"""Shaking of convex shape functions.

A shape function of radius ``a`` is even, C^1, equal to ``|x|`` for
``|x| >= a`` and strictly convex on ``[-a, a]``. For a slope ``alpha`` in
``[0, 1)`` its shaken function pushes every slope-``alpha`` chord of the
region between ``|x|`` and ``f`` against the line ``y = -x``.

Notation used throughout:

* ``F(x) = f(x) - alpha * x`` (convex, minimal at ``x_plus``),
* ``phi = F^{-1} o F`` with ``F^{-1}`` the branch on ``[x_plus, inf)``,
* ``delta(x) = F(x) / (1 - alpha) - phi(x)``,
* ``tau`` the inverse of ``x -> x + delta(x)`` on ``(-inf, x_plus]``,
* ``sh_f(y) = alpha * y + F(tau(y))`` for ``y <= s_alpha`` and ``y`` beyond.

Every inverse is computed by bracketed root-finding on brackets given by
the monotonicity of the maps involved.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

DEFAULT_TOL = 1e-12


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha!r}")


def _root(fn, lo: float, hi: float, tol: float) -> float:
    """Root of a monotone ``fn`` on ``[lo, hi]``.

    Endpoint values that are zero or carry the wrong sign only through
    round-off are resolved to the endpoint with the smaller residual.
    """
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        return lo if abs(flo) <= abs(fhi) else hi
    return brentq(fn, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)


class ShapeFunction(ABC):
    """A member of the convex class of radius ``a``."""

    a: float

    @abstractmethod
    def value(self, x: float) -> float: ...

    @abstractmethod
    def derivative(self, x: float) -> float: ...

    def __call__(self, x: float) -> float:
        return self.value(x)

    def evaluate(self, xs) -> np.ndarray:
        return np.array([self.value(float(x)) for x in np.asarray(xs, dtype=float)])

    def derivative_inverse(self, t: float) -> float:
        """The unique ``x`` in ``[-a, a]`` with ``f'(x) = t``, for ``t`` in ``[-1, 1]``."""
        if not -1.0 <= t <= 1.0:
            raise ValueError(f"derivative values lie in [-1, 1], got {t!r}")
        return _root(lambda x: self.derivative(x) - t, -self.a, self.a, DEFAULT_TOL * 1e-2)

    def slope_argmin(self, beta: float) -> float:
        """Minimiser of ``f(x) - beta * x``."""
        return self.derivative_inverse(beta)


class Omega(ShapeFunction):
    """The Vershik-Kerov-Logan-Shepp curve, radius 2."""

    a = 2.0

    def value(self, x: float) -> float:
        return omega_eval(x)

    def derivative(self, x: float) -> float:
        return omega_deriv(x)

    def evaluate(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        s = np.clip(xs, -2.0, 2.0)
        inside = (2 / np.pi) * (s * np.arcsin(s / 2) + np.sqrt(np.maximum(4 - s * s, 0.0)))
        return np.where(np.abs(xs) <= 2.0, inside, np.abs(xs))

    def derivative_inverse(self, t: float) -> float:
        if not -1.0 <= t <= 1.0:
            raise ValueError(f"derivative values lie in [-1, 1], got {t!r}")
        return 2.0 * math.sin(math.pi * t / 2)

    def __repr__(self) -> str:
        return "Omega()"


class Sigma(ShapeFunction):
    """``(x**2 + 1) / 2`` on ``[-1, 1]``, ``|x|`` outside; radius 1."""

    a = 1.0

    def value(self, x: float) -> float:
        return abs(x) if abs(x) >= 1.0 else 0.5 * (x * x + 1.0)

    def derivative(self, x: float) -> float:
        return math.copysign(1.0, x) if abs(x) >= 1.0 else x

    def evaluate(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return np.where(np.abs(xs) >= 1.0, np.abs(xs), 0.5 * (xs * xs + 1.0))

    def __repr__(self) -> str:
        return "Sigma()"


class Scaled(ShapeFunction):
    """``x -> theta * f(x / theta)``, a shape of radius ``theta * a``."""

    def __init__(self, base: ShapeFunction, theta: float):
        if not theta > 0:
            raise ValueError(f"scale factor must be positive, got {theta!r}")
        self.base = base
        self.theta = float(theta)
        self.a = self.theta * base.a

    def value(self, x: float) -> float:
        return self.theta * self.base.value(x / self.theta)

    def derivative(self, x: float) -> float:
        return self.base.derivative(x / self.theta)

    def evaluate(self, xs) -> np.ndarray:
        return self.theta * self.base.evaluate(np.asarray(xs, dtype=float) / self.theta)

    def derivative_inverse(self, t: float) -> float:
        return self.theta * self.base.derivative_inverse(t)

    def __repr__(self) -> str:
        return f"Scaled({self.base!r}, {self.theta!r})"


def omega_eval(s: float) -> float:
    if abs(s) > 2.0:
        return abs(s)
    u = max(-1.0, min(1.0, s / 2))
    return (2 / math.pi) * (s * math.asin(u) + math.sqrt(max(4.0 - s * s, 0.0)))


def omega_deriv(s: float) -> float:
    if abs(s) > 2.0:
        return math.copysign(1.0, s)
    return (2 / math.pi) * math.asin(max(-1.0, min(1.0, s / 2)))


def scaled(f: ShapeFunction, eps: float, sign: int = 1) -> Scaled:
    """``f^{+eps}`` (``sign=+1``) or ``f^{-eps}`` (``sign=-1``): scale by ``1 +- eps/2``."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return Scaled(f, 1.0 + sign * eps / 2)


def big_F(f: ShapeFunction, alpha: float, x: float) -> float:
    _check_alpha(alpha)
    return f.value(x) - alpha * x


def x_alpha_plus(f: ShapeFunction, alpha: float, tol: float = DEFAULT_TOL) -> float:
    """Minimiser of ``f(x) - alpha * x``, i.e. the root of ``f' = alpha`` in ``[0, a)``."""
    _check_alpha(alpha)
    numeric = _root(lambda x: f.derivative(x) - alpha, 0.0, f.a, tol * 1e-2)
    if type(f).derivative_inverse is not ShapeFunction.derivative_inverse:
        closed = f.derivative_inverse(alpha)
        assert abs(closed - numeric) <= max(tol, 1e-9 * f.a), (closed, numeric)
        return closed
    return numeric


def line_anchor(f: ShapeFunction, alpha: float, p: float) -> float:
    """Abscissa ``x`` such that ``(x, -x)`` lies on the slope-``alpha`` line through ``(p, f(p))``."""
    _check_alpha(alpha)
    return (alpha * p - f.value(p)) / (alpha + 1.0)


class ShakenShape:
    """The shaken function of ``base`` along slope ``alpha``, with its landmarks.

    Landmarks are computed at construction and the instance is never
    mutated afterwards, so evaluation is safe from any number of threads.
    """

    def __init__(self, base: ShapeFunction, alpha: float, tol: float = DEFAULT_TOL):
        _check_alpha(alpha)
        self.base = base
        self.alpha = float(alpha)
        self.tol = float(tol)
        self.a = base.a
        self.x_plus = x_alpha_plus(base, self.alpha, tol)
        self.F_min = self.F(self.x_plus)
        self.x_minus = self._solve_x_minus()
        self.s_alpha = self.F_min / (1.0 - self.alpha)
        self.u_alpha = self._solve_crossing()
        assert 0.0 <= self.x_plus < self.a
        assert -self.a - tol <= self.x_minus < self.x_plus
        assert self.x_plus < self.s_alpha < self.a

    def __repr__(self) -> str:
        return f"ShakenShape({self.base!r}, alpha={self.alpha!r})"

    # -- chord maps -------------------------------------------------------
    def F(self, x: float) -> float:
        return self.base.value(x) - self.alpha * x

    def F_inverse(self, y: float) -> float:
        """The ``x >= x_plus`` with ``F(x) = y``."""
        if y < self.F_min - self.tol:
            raise ValueError(f"y={y!r} is below the minimum {self.F_min!r} of F")
        one_minus = 1.0 - self.alpha
        if y >= one_minus * self.a:
            # F is linear with slope 1 - alpha beyond a
            return y / one_minus
        if y <= self.F_min:
            return self.x_plus
        return _root(lambda x: self.F(x) - y, self.x_plus, self.a, self.tol * 1e-2)

    def phi(self, s: float) -> float:
        """Chord partner: ``s`` itself for ``s >= x_plus``, else ``F^{-1}(F(s))``."""
        if s >= self.x_plus:
            return s
        return self.F_inverse(self.F(s))

    def delta(self, x: float) -> float:
        if x > self.x_plus:
            raise ValueError(f"delta is only used on (-inf, x_plus], got x={x!r}")
        if x <= self.x_minus:
            return 0.0
        return self.F(x) / (1.0 - self.alpha) - self.phi(x)

    def _push(self, x: float) -> float:
        return x + self.delta(x)

    def tau(self, y: float) -> float:
        """Inverse of the increasing map ``x -> x + delta(x)`` on ``(-inf, x_plus]``."""
        if y > self.s_alpha + self.tol:
            raise ValueError(f"tau is defined up to s_alpha={self.s_alpha!r}, got {y!r}")
        if y <= self.x_minus:
            return y
        return _root(lambda x: self._push(x) - y, self.x_minus, self.x_plus, self.tol)

    # -- the shaken function ---------------------------------------------
    def value(self, y: float) -> float:
        if y > self.s_alpha:
            return y
        if y <= self.x_minus:
            return self.base.value(y)
        return self.alpha * y + self.F(self.tau(y))

    __call__ = value

    def evaluate(self, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=float)
        return np.array([self.value(float(y)) for y in ys.flat]).reshape(ys.shape)

    def slope_argmin(self, beta: float) -> float:
        """Minimiser of ``sh_f(x) - beta * x``; only the shaking slope itself is supported."""
        if beta != self.alpha:
            raise ValueError("slices of a shaken shape are only supported along its own slope")
        return self.s_alpha

    # -- landmarks --------------------------------------------------------
    def _solve_x_minus(self) -> float:
        target = (1.0 - self.alpha) * self.a
        return _root(lambda x: self.F(x) - target, -self.a, self.x_plus, self.tol)

    def _solve_crossing(self) -> float:
        return _root(
            lambda u: self.phi(self.tau(u)) - u, self.x_minus, self.s_alpha, self.tol
        )

    def landmarks(self) -> dict[str, float]:
        return {
            "alpha": self.alpha,
            "a": self.a,
            "x_minus": self.x_minus,
            "x_plus": self.x_plus,
            "s_alpha": self.s_alpha,
            "u_alpha": self.u_alpha,
        }


def alpha_of_e(e: int) -> float:
    """Slope of the e-ladders in the Russian convention, ``1 - 2/e``."""
    if int(e) != e or e < 2:
        raise ValueError(f"e must be an integer >= 2, got {e!r}")
    return (e - 2) / e


@lru_cache(maxsize=None)
def omega_e(e: int) -> ShakenShape:
    """The regularised limit shape ``Omega`` shaken along ``1 - 2/e``."""
    return ShakenShape(Omega(), alpha_of_e(e))


def big_F_inverse(sh: ShakenShape, y: float) -> float:
    return sh.F_inverse(y)


def phi(sh: ShakenShape, s: float) -> float:
    return sh.phi(s)


def x_alpha_minus(sh: ShakenShape) -> float:
    return sh.x_minus


def delta(sh: ShakenShape, x: float) -> float:
    return sh.delta(x)


def s_alpha(sh: ShakenShape) -> float:
    return sh.s_alpha


def tau(sh: ShakenShape, y: float) -> float:
    return sh.tau(y)


def shaken_eval(sh: ShakenShape, y: float) -> float:
    return sh.value(y)


def crossing_point(sh: ShakenShape) -> float:
    return sh.u_alpha


def write_curve_csv(sh: ShakenShape, xs, path: str | Path) -> None:
    """Rows ``x,f,sh_f`` on the given abscissae."""
    path = Path(path)
    xs = np.asarray(xs, dtype=float)
    f_vals = sh.base.evaluate(xs)
    sh_vals = sh.evaluate(xs)
    try:
        with path.open("w") as fh:
            fh.write("x,f,sh_f\n")
            for x, fv, sv in zip(xs, f_vals, sh_vals):
                fh.write(f"{x:.12g},{fv:.12g},{sv:.12g}\n")
    except OSError as exc:
        raise OSError(f"cannot write curve CSV to {path}: {exc}") from exc


def write_landmarks_json(sh: ShakenShape, path: str | Path) -> None:
    path = Path(path)
    try:
        path.write_text(json.dumps(sh.landmarks(), indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write landmarks to {path}: {exc}") from exc
