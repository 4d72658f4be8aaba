import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from regshape.shapes import (
    Omega,
    Scaled,
    ShakenShape,
    Sigma,
    alpha_of_e,
    big_F,
    big_F_inverse,
    crossing_point,
    delta,
    line_anchor,
    omega_deriv,
    omega_e,
    omega_eval,
    phi,
    s_alpha,
    scaled,
    shaken_eval,
    tau,
    write_curve_csv,
    write_landmarks_json,
    x_alpha_minus,
    x_alpha_plus,
)
from shape_checks import ALPHAS, run_suite

mpmath.mp.dps = 40


def omega_mp(s):
    s = mpmath.mpf(s)
    if abs(s) >= 2:
        return abs(s)
    return 2 / mpmath.pi * (s * mpmath.asin(s / 2) + mpmath.sqrt(4 - s * s))


def bisect_mp(fn, lo, hi, iters=200):
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    flo = fn(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if (fn(mid) > 0) == (flo > 0):
            lo, flo = mid, fn(mid)
        else:
            hi = mid
    return (lo + hi) / 2


BASES = [Omega(), Sigma(), Scaled(Omega(), 1.25), Scaled(Sigma(), 0.8)]


class TestShapeFunctions:
    @pytest.mark.parametrize("s", [0.0, 0.3, 1.0, -1.7, 1.999, 2.0, 2.5, -4.0])
    def test_omega_matches_high_precision(self, s):
        assert omega_eval(s) == pytest.approx(float(omega_mp(s)), abs=1e-14)

    def test_omega_examples(self):
        assert omega_eval(0.0) == pytest.approx(4 / math.pi, abs=1e-15)
        assert omega_eval(2.0) == 2.0
        assert omega_eval(1.0) == pytest.approx(1 / 3 + 2 * math.sqrt(3) / math.pi, abs=1e-15)
        assert omega_deriv(0.0) == 0.0
        assert omega_deriv(2.0) == 1.0
        assert omega_deriv(1.0) == pytest.approx(1 / 3, abs=1e-15)

    def test_omega_boundary_continuity(self):
        assert omega_eval(2 - 1e-12) == pytest.approx(2.0, abs=1e-5)
        assert omega_eval(2 * (1 + 1e-16)) == pytest.approx(2.0)

    def test_omega_derivative_is_antiderivative(self):
        xs = np.linspace(-1.99, 1.99, 101)
        h = 1e-6
        fd = [(omega_eval(x + h) - omega_eval(x - h)) / (2 * h) for x in xs]
        assert np.allclose(fd, [omega_deriv(x) for x in xs], atol=1e-8)

    @pytest.mark.parametrize("f", BASES, ids=repr)
    def test_class_invariants(self, f):
        xs = np.linspace(-f.a, f.a, 401)
        assert all(f(x) == pytest.approx(f(-x), abs=1e-14) for x in xs)
        assert all(f(x) == pytest.approx(abs(x), abs=1e-14) for x in (f.a, -f.a, 1.5 * f.a, -3 * f.a))
        d = [f.derivative(x) for x in xs]
        assert all(b > a for a, b in zip(d, d[1:]))
        assert f.derivative(0.0) == pytest.approx(0.0, abs=1e-15)
        assert f.derivative(f.a) == pytest.approx(1.0, abs=1e-12)
        assert all(abs(v) < 1 for v in d[1:-1])
        assert np.allclose(f.evaluate(xs), [f(x) for x in xs], atol=1e-14)

    @pytest.mark.parametrize("f", BASES, ids=repr)
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_closed_form_inverse_agrees_with_root(self, f, alpha):
        x = x_alpha_plus(f, alpha)
        assert 0 <= x < f.a
        assert f.derivative(x) == pytest.approx(alpha, abs=1e-10)

    def test_sigma_values(self):
        assert big_F(Sigma(), 0.25, 0.25) == pytest.approx(15 / 32, abs=1e-15)
        assert x_alpha_plus(Sigma(), 0.25) == pytest.approx(0.25, abs=1e-13)


class TestChordCalculus:
    def test_F_examples(self):
        assert big_F(Omega(), 0.0, 0.7) == omega_eval(0.7)
        assert big_F(Omega(), 0.4, 2.0) == pytest.approx(2 * (1 - 0.4))
        with pytest.raises(ValueError):
            big_F(Omega(), 1.0, 0.0)

    def test_x_plus_examples(self):
        assert x_alpha_plus(Omega(), 0.0) == pytest.approx(0.0, abs=1e-15)
        assert x_alpha_plus(Omega(), 0.5) == pytest.approx(math.sqrt(2), abs=1e-14)
        with pytest.raises(ValueError):
            x_alpha_plus(Omega(), -0.1)

    def test_F_inverse_examples(self):
        sh = ShakenShape(Omega(), 1 / 3)
        assert big_F_inverse(sh, sh.F_min) == pytest.approx(sh.x_plus, abs=1e-12)
        for b in (2.0, 2.7, 10.0):
            assert big_F_inverse(sh, (1 - sh.alpha) * b) == pytest.approx(b, abs=1e-12)
        sh0 = ShakenShape(Omega(), 0.0)
        assert big_F_inverse(sh0, 4 / math.pi) == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(ValueError):
            big_F_inverse(sh, sh.F_min - 1e-3)

    @given(st.floats(0.0, 0.95), st.floats(-3.0, 3.0))
    def test_F_inverse_residual(self, alpha, x):
        sh = ShakenShape(Omega(), alpha)
        y = sh.F(max(x, sh.x_plus))
        assert abs(sh.F(sh.F_inverse(y)) - y) <= 1e-12

    def test_phi_examples(self):
        sh = ShakenShape(Omega(), 1 / 3)
        assert phi(sh, sh.x_plus) == sh.x_plus
        assert phi(sh, sh.x_minus) == pytest.approx(sh.a, abs=1e-10)
        sh0 = ShakenShape(Omega(), 0.0)
        assert phi(sh0, -1.0) == pytest.approx(1.0, abs=1e-12)

    def test_phi_decreasing(self):
        sh = ShakenShape(Omega(), 0.5)
        xs = np.linspace(-3, sh.x_plus, 200)
        vals = [sh.phi(x) for x in xs]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_x_minus_examples(self):
        assert x_alpha_minus(ShakenShape(Omega(), 0.0)) == pytest.approx(-2.0, abs=1e-12)
        assert x_alpha_minus(ShakenShape(Sigma(), 0.0)) == pytest.approx(-1.0, abs=1e-12)
        sh = ShakenShape(Omega(), 1 / 3)
        oracle = bisect_mp(lambda x: omega_mp(x) - x / 3 - mpmath.mpf(4) / 3, -2, sh.x_plus)
        assert sh.x_minus == pytest.approx(float(oracle), abs=1e-11)

    def test_delta_examples(self):
        sh0 = ShakenShape(Omega(), 0.0)
        assert delta(sh0, 0.0) == pytest.approx(4 / math.pi, abs=1e-12)
        assert delta(sh0, -1.0) == pytest.approx(omega_eval(-1.0) - 1.0, abs=1e-12)
        sh = ShakenShape(Omega(), 0.5)
        assert delta(sh, sh.x_minus - 0.5) == 0.0
        with pytest.raises(ValueError):
            delta(sh, sh.x_plus + 0.1)

    def test_delta_increasing(self):
        sh = ShakenShape(Sigma(), 0.25)
        xs = np.linspace(sh.x_minus, sh.x_plus, 200)
        d = [sh.delta(x) for x in xs]
        assert all(b >= a - 1e-12 for a, b in zip(d, d[1:]))

    def test_tau_examples(self):
        sh = ShakenShape(Omega(), 1 / 3)
        assert tau(sh, sh.s_alpha) == pytest.approx(sh.x_plus, abs=1e-9)
        assert tau(sh, sh.x_minus - 0.3) == sh.x_minus - 0.3
        assert tau(ShakenShape(Omega(), 0.0), 4 / math.pi) == pytest.approx(0.0, abs=1e-9)
        with pytest.raises(ValueError):
            tau(sh, sh.s_alpha + 0.01)

    @given(st.floats(0.0, 0.9), st.floats(0.0, 1.0))
    def test_tau_inverts_push(self, alpha, t):
        sh = ShakenShape(Sigma(), alpha)
        x = sh.x_minus + t * (sh.x_plus - sh.x_minus)
        assert tau(sh, x + sh.delta(x)) == pytest.approx(x, abs=1e-9)


class TestLandmarks:
    @pytest.mark.parametrize("e,table", [(2, 1.27), (3, 1.65), (4, 1.80)])
    def test_support_table(self, e, table):
        s = s_alpha(omega_e(e))
        assert round(s, 2) == table
        assert s == pytest.approx(2 * e / math.pi * math.sin(math.pi / e), abs=1e-9)

    @pytest.mark.parametrize("e", range(2, 11))
    def test_support_closed_form(self, e):
        assert abs(omega_e(e).s_alpha - 2 * e / math.pi * math.sin(math.pi / e)) <= 1e-9

    @pytest.mark.parametrize("f", BASES, ids=repr)
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_ordering(self, f, alpha):
        sh = ShakenShape(f, alpha)
        assert -f.a <= sh.x_minus + 1e-12 and sh.x_minus < sh.x_plus < sh.s_alpha < f.a
        lo, hi = line_anchor(f, alpha, sh.x_minus), line_anchor(f, alpha, sh.x_plus)
        assert -f.a - 1e-12 <= lo < hi < 0

    def test_line_anchor_examples(self):
        assert line_anchor(Omega(), 0.0, 0.0) == pytest.approx(-4 / math.pi)
        assert line_anchor(Sigma(), 0.0, 0.5) == pytest.approx(-Sigma()(0.5))

    def test_crossing_residual_and_scan(self):
        sh = ShakenShape(Omega(), 0.0)
        u = crossing_point(sh)
        assert abs(sh.phi(sh.tau(u)) - u) <= 1e-9

        def g(y):
            return sh.phi(sh.tau(y)) - y

        coarse = np.arange(sh.x_minus + 1e-3, sh.s_alpha, 1e-3)
        signs = np.sign([g(y) for y in coarse])
        k = int(np.flatnonzero(np.diff(signs))[0])
        fine = np.arange(coarse[k], coarse[k + 1] + 1e-6, 1e-6)
        j = int(np.flatnonzero(np.diff(np.sign([g(y) for y in fine])))[0])
        assert fine[j] - 1e-6 <= u <= fine[j + 1] + 1e-6

    @pytest.mark.parametrize("alpha", [0.0, 1 / 3, 0.5])
    def test_crossing_sign_pattern(self, alpha):
        sh = ShakenShape(Omega(), alpha)
        u = sh.u_alpha
        assert sh.x_minus < u < sh.s_alpha
        for y in np.linspace(u, sh.a, 102)[1:-1]:
            assert sh(y) < sh.base(y)
        for y in np.linspace(sh.x_minus, u, 102)[1:-1]:
            assert sh(y) > sh.base(y)

    def test_landmark_json(self, tmp_path):
        path = tmp_path / "lm.json"
        write_landmarks_json(omega_e(3), path)
        data = json.loads(path.read_text())
        assert set(data) == {"alpha", "a", "x_minus", "x_plus", "s_alpha", "u_alpha"}
        assert data["s_alpha"] == pytest.approx(1.6540, abs=1e-4)


class TestShakenFunction:
    def test_alpha_zero_corollary_points(self):
        sh = omega_e(2)
        assert shaken_eval(sh, 2 * -1.0 + omega_eval(-1.0)) == pytest.approx(omega_eval(-1.0), abs=1e-12)
        assert shaken_eval(omega_e(3), -3.0) == 3.0
        s = omega_e(3).s_alpha
        assert shaken_eval(omega_e(3), s) == pytest.approx(s, abs=1e-12)

    @pytest.mark.parametrize("e", [2, 3, 4])
    def test_regions(self, e):
        sh = omega_e(e)
        for y in np.linspace(-4, sh.x_minus, 30):
            assert sh(y) == pytest.approx(omega_eval(y), abs=1e-13)
        for y in np.linspace(sh.s_alpha, 5, 30):
            assert sh(y) == pytest.approx(y, abs=1e-12)

    def test_continuity_at_support(self):
        sh = omega_e(3)
        s = sh.s_alpha
        assert abs(sh(s - 1e-9) - sh(s + 1e-9)) < 1e-8

    def test_vectorised_shape(self):
        sh = omega_e(3)
        ys = np.linspace(-3, 3, 12).reshape(3, 4)
        assert sh.evaluate(ys).shape == (3, 4)

    def test_alpha_one_limit(self):
        base = Omega()
        xs = np.linspace(-2, 2, 401)
        dists = [np.max(np.abs(ShakenShape(base, a).evaluate(xs) - base.evaluate(xs))) for a in (0.9, 0.99)]
        assert dists[1] < dists[0]

    def test_slope_argmin_only_own_slope(self):
        sh = omega_e(3)
        assert sh.slope_argmin(sh.alpha) == sh.s_alpha
        with pytest.raises(ValueError):
            sh.slope_argmin(0.1)

    def test_curve_csv(self, tmp_path):
        path = tmp_path / "c.csv"
        write_curve_csv(omega_e(2), [-3.0, 0.0, 3.0], path)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,f,sh_f" and len(lines) == 4
        assert lines[1] == "-3,3,3"


class TestScaling:
    def test_identity_factor(self):
        f = Omega()
        g = Scaled(f, 1.0)
        assert all(g(x) == pytest.approx(f(x), abs=1e-15) for x in np.linspace(-3, 3, 31))

    def test_value_at_zero(self):
        assert scaled(Omega(), 0.3, 1)(0.0) == pytest.approx(1.15 * 4 / math.pi)

    @pytest.mark.parametrize("eps", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_sup_norm_and_sandwich(self, eps, sign):
        f = Omega()
        g = scaled(f, eps, sign)
        assert g.a == pytest.approx((2 + sign * eps) * f.a / 2)
        xs = np.linspace(-3, 3, 6001)
        diff = g.evaluate(xs) - f.evaluate(xs)
        assert np.max(np.abs(diff)) == pytest.approx(eps / 2 * f(0.0), abs=1e-12)
        assert np.all(sign * diff >= -1e-14)

    def test_rejects_bad_eps(self):
        with pytest.raises(ValueError):
            scaled(Omega(), 0.0)
        with pytest.raises(ValueError):
            scaled(Omega(), 1.0)
        with pytest.raises(ValueError):
            scaled(Omega(), 0.5, 0)


@pytest.mark.parametrize("base", [Omega(), Sigma()], ids=repr)
@pytest.mark.parametrize("alpha", ALPHAS)
def test_invariant_suite(base, alpha):
    results = run_suite(base, alpha)
    failed = {k: v for k, v in results.items() if not v[2]}
    assert not failed, failed


def test_alpha_of_e():
    assert alpha_of_e(2) == 0.0 and alpha_of_e(4) == 0.5
    with pytest.raises(ValueError):
        alpha_of_e(1)
