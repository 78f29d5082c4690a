import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from caputofem.fractional_time import (
    apply_l1_operator,
    history_coefficients,
    l1_weights,
    make_time_grid,
)


class TestTimeGrid:
    def test_unit_interval(self):
        g = make_time_grid(1.0, 100, 0.5)
        assert g.dt == pytest.approx(0.01)
        assert g.alpha0 == pytest.approx(math.sqrt(math.pi) / 2 * 0.1, rel=1e-13)
        assert g.alpha0 == pytest.approx(0.0886226925, rel=1e-9)

    def test_single_step(self):
        g = make_time_grid(1.0, 1, 0.5)
        assert g.dt == 1.0
        assert g.alpha0 == pytest.approx(0.8862269254527580, rel=1e-14)

    def test_scale_factor(self):
        g = make_time_grid(2.0, 4, 0.3)
        assert g.dt == 0.5
        assert g.alpha0 / math.gamma(1.7) == pytest.approx(2 ** -0.3, rel=1e-13)

    def test_times(self):
        g = make_time_grid(2.0, 4, 0.3)
        np.testing.assert_allclose(g.times, [0, 0.5, 1, 1.5, 2])
        assert g.dt * g.K == pytest.approx(g.T, rel=1e-15)

    @pytest.mark.parametrize("T, K, alpha", [
        (1.0, 10, 0.0), (1.0, 10, 1.0), (1.0, 10, -0.2),
        (0.0, 10, 0.5), (-1.0, 10, 0.5), (1.0, 0, 0.5), (1.0, 2.5, 0.5),
    ])
    def test_domain_errors(self, T, K, alpha):
        with pytest.raises(ValueError):
            make_time_grid(T, K, alpha)


class TestWeights:
    def test_half_order(self):
        w = l1_weights(0.5, 3)
        np.testing.assert_allclose(w.b, [1.0, math.sqrt(2) - 1, math.sqrt(3) - math.sqrt(2)], rtol=1e-14)
        assert w.b[1] == pytest.approx(0.41421356, abs=1e-8)
        assert w.b[2] == pytest.approx(0.31783724, abs=1e-8)

    @pytest.mark.parametrize("alpha", [0.01, 0.5, 0.99])
    def test_single(self, alpha):
        assert l1_weights(alpha, 1).b.tolist() == [1.0]

    def test_near_one(self):
        w = l1_weights(0.999, 3)
        assert w.b[1] == pytest.approx(2 ** 0.001 - 1, rel=1e-9)
        assert w.b[1] == pytest.approx(6.93e-4, rel=1e-3)

    def test_immutable(self):
        w = l1_weights(0.5, 4)
        with pytest.raises(ValueError):
            w.b[0] = 2.0

    def test_domain(self):
        with pytest.raises(ValueError):
            l1_weights(1.2, 4)
        with pytest.raises(ValueError):
            l1_weights(0.5, 0)

    @settings(max_examples=100, deadline=None)
    @given(alpha=st.floats(0.001, 0.999), K=st.integers(1, 3000))
    def test_properties(self, alpha, K):
        b = l1_weights(alpha, K).b
        assert b[0] == 1.0
        assert np.all(b > 0)
        assert np.all(np.diff(b) < 0)


class TestHistoryCoefficients:
    def test_first_step(self):
        assert history_coefficients(l1_weights(0.3, 5), 0).tolist() == [1.0]

    def test_half_order_k2(self):
        c = history_coefficients(l1_weights(0.5, 3), 2)
        r2, r3 = math.sqrt(2), math.sqrt(3)
        np.testing.assert_allclose(c, [2 - r2, 2 * r2 - 1 - r3, r3 - r2], rtol=1e-13)
        np.testing.assert_allclose(c, [0.58578644, 0.09637632, 0.31783724], atol=1e-8)

    def test_index_error(self):
        with pytest.raises(IndexError):
            history_coefficients(l1_weights(0.5, 3), 3)

    @settings(max_examples=100, deadline=None)
    @given(alpha=st.floats(0.001, 0.999), K=st.integers(1, 2000), data=st.data())
    def test_convex_combination(self, alpha, K, data):
        k = data.draw(st.integers(0, K - 1))
        c = history_coefficients(l1_weights(alpha, K), k)
        assert c.size == k + 1
        assert np.all(c >= 0)
        assert abs(c.sum() - 1.0) <= 1e-13


def _caputo_power(p, alpha, t):
    return math.gamma(p + 1) / math.gamma(p + 1 - alpha) * t ** (p - alpha)


class TestL1Operator:
    def test_constant(self):
        g = make_time_grid(1.0, 8, 0.4)
        w = l1_weights(0.4, 8)
        for k in range(8):
            assert apply_l1_operator(np.full(k + 2, 3.7), g, w, k) == pytest.approx(0.0, abs=1e-13)

    def test_linear_single_step(self):
        g = make_time_grid(1.0, 2, 0.5)
        w = l1_weights(0.5, 2)
        val = apply_l1_operator([0.0, 0.5], g, w, 0)
        assert val == pytest.approx(0.5 / (math.gamma(1.5) * 0.5 ** 0.5), rel=1e-14)
        assert val == pytest.approx(0.797884, abs=1e-6)

    def test_linear_is_exact(self):
        # L1 interpolates linearly, so u = t carries no truncation error
        g = make_time_grid(1.0, 16, 0.3)
        w = l1_weights(0.3, 16)
        t = g.times
        for k in range(16):
            assert apply_l1_operator(t[:k + 2], g, w, k) == pytest.approx(
                _caputo_power(1, 0.3, t[k + 1]), rel=1e-12)

    def test_square_at_final_time(self):
        K = 512
        g = make_time_grid(1.0, K, 0.5)
        w = l1_weights(0.5, K)
        t = g.times
        k = K - 2
        val = apply_l1_operator(t[:k + 2] ** 2, g, w, k)
        exact = _caputo_power(2, 0.5, t[k + 1])
        assert abs(val - exact) < 5 * g.dt ** 1.5

    def test_length_mismatch(self):
        g = make_time_grid(1.0, 4, 0.5)
        w = l1_weights(0.5, 4)
        with pytest.raises(ValueError):
            apply_l1_operator([0.0, 1.0, 2.0], g, w, 0)

    @pytest.mark.parametrize("p", [1, 2, 3])
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_consistency_order(self, p, alpha):
        errs = []
        Ks = [32, 64, 128, 256]
        for K in Ks:
            g = make_time_grid(1.0, K, alpha)
            w = l1_weights(alpha, K)
            t = g.times
            errs.append(abs(apply_l1_operator(t ** p, g, w, K - 1) - _caputo_power(p, alpha, 1.0)))
        if p == 1:
            assert max(errs) < 1e-12
            return
        rates = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(rates >= 2 - alpha - 0.25), rates

    def test_backward_difference_limit(self):
        alpha = 1 - 1e-8
        K = 10
        g = make_time_grid(1.0, K, alpha)
        w = l1_weights(alpha, K)
        assert np.all(w.b[1:] < 1e-7)
        assert g.alpha0 == pytest.approx(g.dt, rel=1e-6)
        u = np.sin(g.times) + 1.0
        for k in range(K):
            bd = (u[k + 1] - u[k]) / g.dt
            assert apply_l1_operator(u[:k + 2], g, w, k) == pytest.approx(bd, rel=1e-6)
