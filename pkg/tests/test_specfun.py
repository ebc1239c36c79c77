import math

import numpy as np
import pytest

from tuecount import specfun
from tuecount.errors import ThresholdError
from tuecount.quadrature import adaptive_quad
from tuecount.specfun import (
    J_EXACT,
    Strategy,
    beta_fn,
    inc_beta_cf,
    inc_beta_exact_sum,
    inc_beta_temme,
    j_min_temme,
    log_barnes_g,
    reg_inc_gamma_q,
    temme_coeffs,
)

from oracles import mp_incbeta, mp_log_barnes_g, mp_reg_inc_gamma_q

# frozen 50-digit references
Q_2P5_1P7 = 0.638569923103795076591912114494


class TestRegIncGamma:
    def test_at_zero(self):
        assert reg_inc_gamma_q(1.0, 0.0) == 1.0

    def test_exponential_case(self):
        assert abs(reg_inc_gamma_q(1.0, 1.0) - math.exp(-1.0)) < 1e-14

    def test_against_quadrature_oracle(self):
        # direct numerical integration of the defining tail integral
        val = adaptive_quad(
            lambda s: s**1.5 * np.exp(-s), 1.7, 60.0, abs_tol=1e-14
        ).value / math.gamma(2.5)
        assert abs(reg_inc_gamma_q(2.5, 1.7) - val) < 1e-12
        assert abs(reg_inc_gamma_q(2.5, 1.7) - Q_2P5_1P7) < 1e-13

    def test_strictly_decreasing_in_x(self):
        x = np.linspace(0.0, 30.0, 400)
        q = reg_inc_gamma_q(0.7, x)
        assert np.all(np.diff(q) < 0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            reg_inc_gamma_q(0.0, 1.0)
        with pytest.raises(ValueError):
            reg_inc_gamma_q(1.0, -0.5)

    def test_recursion_identity(self, rng):
        # Q(a+1, x) = Q(a, x) + x^a e^-x / Gamma(a+1)
        for _ in range(300):
            a = rng.uniform(0.1, 12.0)
            x = rng.uniform(0.0, 25.0)
            lhs = reg_inc_gamma_q(a + 1.0, x)
            rhs = reg_inc_gamma_q(a, x) + x**a * math.exp(-x) / math.gamma(a + 1.0)
            assert abs(lhs - rhs) < 1e-12

    def test_vs_mpmath(self, rng):
        for _ in range(40):
            a = rng.uniform(0.1, 10.0)
            x = rng.uniform(0.0, 10.0)
            assert abs(reg_inc_gamma_q(a, x) - float(mp_reg_inc_gamma_q(a, x))) < 1e-13


class TestBetaFn:
    def test_small_cases(self):
        assert abs(beta_fn(1.0, 2.5) - 0.4) < 1e-14
        assert abs(beta_fn(7.0, 1.0) - 1.0 / 7.0) < 1e-15
        assert abs(beta_fn(2.0, 3.0) - 1.0 / 12.0) < 1e-15

    def test_no_overflow_at_huge_j(self):
        val = beta_fn(1e6, 2.5)
        assert 0.0 < val < 1.0
        # B(j, a) ~ Gamma(a) j^-a for large j
        approx = math.gamma(2.5) * 1e6**-2.5
        assert abs(val / approx - 1.0) < 1e-4

    def test_domain_error(self):
        with pytest.raises(ValueError):
            beta_fn(-1.0, 2.0)
        with pytest.raises(ValueError):
            beta_fn(2.0, 0.0)


class TestExactSum:
    def test_j1_closed_form(self):
        ev = inc_beta_exact_sum(0.7, 1, 2.0)
        assert ev.strategy is Strategy.EXACT_SUM
        assert abs(ev.value - (1.0 - 0.3**2)) < 1e-15

    def test_endpoints_exact(self):
        assert inc_beta_exact_sum(1.0, 5, 0.5).value == 1.0
        assert inc_beta_exact_sum(0.0, 5, 0.5).value == 0.0

    def test_against_quadrature_oracle(self):
        # direct integration of y^9 (1-y)^1.5 over [0, 0.9]
        num = adaptive_quad(
            lambda y: y**9 * (1.0 - y) ** 1.5, 0.0, 0.9, abs_tol=1e-14
        ).value
        oracle = num / beta_fn(10, 2.5)
        assert abs(inc_beta_exact_sum(0.9, 10, 2.5).value - oracle) < 1e-11

    def test_threshold_error(self):
        with pytest.raises(ThresholdError):
            inc_beta_exact_sum(0.5, J_EXACT + 1, 1.0)

    def test_err_estimate_tracks_conditioning(self):
        well = inc_beta_exact_sum(0.95, 30, 2.0)
        ill = inc_beta_exact_sum(0.30, 40, 2.0)
        assert well.err_estimate < 1e-12
        assert ill.err_estimate > well.err_estimate
        assert 0.0 <= well.value <= 1.0 and 0.0 <= ill.value <= 1.0


class TestContinuedFraction:
    def test_j1_closed_form(self):
        assert abs(inc_beta_cf(0.7, 1.0, 2.0).value - 0.91) < 1e-14

    def test_symmetric_beta_half(self):
        assert abs(inc_beta_cf(0.5, 3.0, 3.0).value - 0.5) < 1e-14

    def test_endpoints_exact(self):
        assert inc_beta_cf(0.0, 4.0, 1.5).value == 0.0
        assert inc_beta_cf(1.0, 4.0, 1.5).value == 1.0

    def test_large_j_vs_bigfloat_exact_sum(self, incbeta_table):
        # pinned contract case: v = 1 - 10/n at n = j = 1000
        row = [r for r in incbeta_table if r[1] == 1000 and r[2] == 0.5][0]
        v, j, alpha, ref = row
        assert v == 1.0 - 10.0 / 1000.0
        assert abs(inc_beta_cf(v, j, alpha).value - ref) < 1e-10

    def test_oracle_table(self, incbeta_table):
        for v, j, alpha, ref in incbeta_table:
            got = inc_beta_cf(v, j, alpha).value
            assert abs(got - ref) < 1e-13, (v, j, alpha)


class TestTemme:
    def test_d_coeffs_alpha_one(self):
        co = temme_coeffs(0.8, 20, 1.0, 2)
        assert co.d[0] == 1.0
        assert co.d[1] == 0.0

    def test_d0_closed_form(self):
        co = temme_coeffs(0.8, 20, 2.5, 1)
        assert abs(co.d[0] - (0.2 / math.log(1.25)) ** 1.5) < 1e-13

    def test_d1_closed_form_and_finite_difference(self):
        v, alpha = 0.8, 2.5
        co = temme_coeffs(v, 20, alpha, 2)
        L = math.log(1.0 / v)
        d1_closed = (
            (alpha - 1.0)
            * (v - 1.0 + v * L)
            / (v - 1.0) ** 2
            * ((1.0 - v) / L) ** alpha
        )
        assert abs(co.d[1] - d1_closed) < 1e-12 * abs(d1_closed)
        # independent route: derivative of the generating function
        g = lambda t: ((1.0 - math.exp(-t)) / t) ** (alpha - 1.0)
        h = 1e-5
        d1_fd = (g(L + h) - g(L - h)) / (2.0 * h)
        assert abs(co.d[1] - d1_fd) < 1e-8

    def test_f_recursion_reproduces(self):
        co = temme_coeffs(0.93, 250, 3.3, 6)
        L = math.log(1.0 / 0.93)
        for k in range(2, 6):
            rebuilt = (k - 1 + 3.3 - 250 * L) / 250 * co.F[k - 1] + (
                k - 1
            ) * L / 250 * co.F[k - 2]
            assert rebuilt == pytest.approx(co.F[k], rel=1e-15, abs=1e-300)

    def test_matches_cf_in_trusted_regime(self):
        j = 1000
        v = 1.0 - 1.0 / j
        got = inc_beta_temme(v, j, 1.0, 3).value
        ref = inc_beta_cf(v, j, 1.0).value
        assert abs(got - ref) < 1e-9

    def test_order_of_accuracy_smoke(self):
        # halving of the error by ~2^3 per doubling; tight version in acceptance
        errs = []
        for j in (4096, 8192):
            v = 1.0 - 2.0 / j
            got = inc_beta_temme(v, j, 2.5, 3).value
            errs.append(abs(got - float(mp_incbeta(v, j, 2.5))))
        assert 5.0 < errs[0] / errs[1] < 12.0

    def test_v_one_within_claim(self):
        ev = inc_beta_temme(1.0, 100, 0.5, 2)
        assert abs(ev.value - 1.0) <= ev.err_estimate

    def test_thresholds(self):
        with pytest.raises(ThresholdError):
            inc_beta_temme(0.9, j_min_temme(3) - 1, 1.0, 3)
        with pytest.raises(ThresholdError):
            inc_beta_temme(0.01, 500, 1.0, 3)
        with pytest.raises(ValueError):
            temme_coeffs(0.0, 10, 1.0, 2)

    def test_oracle_table_large_j(self, incbeta_table):
        for v, j, alpha, ref in incbeta_table:
            if j >= j_min_temme(8) and v >= specfun.TEMME_V_MIN and v < 1.0:
                ev = inc_beta_temme(v, j, alpha, 8)
                assert abs(ev.value - ref) <= ev.err_estimate + 1e-12, (v, j, alpha)


class TestStrategyProperties:
    def test_pairwise_agreement(self, rng):
        # all applicable strategies agree within the sum of their error claims
        for _ in range(500):
            v = rng.uniform(0.3, 1.0)
            j = int(rng.integers(1, J_EXACT + 1))
            alpha = rng.uniform(0.1, 10.0)
            evs = [inc_beta_exact_sum(v, j, alpha), inc_beta_cf(v, j, alpha)]
            if j >= j_min_temme(8):
                evs.append(inc_beta_temme(v, j, alpha, 8))
            for i in range(len(evs)):
                for k in range(i + 1, len(evs)):
                    bound = evs[i].err_estimate + evs[k].err_estimate
                    assert abs(evs[i].value - evs[k].value) <= bound

    def test_monotone_in_v(self):
        v = np.linspace(0.0, 1.0, 101)
        vals = [inc_beta_cf(x, 7.0, 2.3).value for x in v]
        assert all(b - a >= -1e-14 for a, b in zip(vals, vals[1:]))

    def test_nonincreasing_in_j(self, rng):
        for _ in range(100):
            v = rng.uniform(0.05, 1.0)
            alpha = rng.uniform(0.1, 10.0)
            j = int(rng.integers(1, 200))
            a = inc_beta_cf(v, j, alpha).value
            b = inc_beta_cf(v, j + 1, alpha).value
            assert b <= a + 1e-13

    def test_complement_identity(self, rng):
        for _ in range(200):
            j = int(rng.integers(1, 50))
            alpha = int(rng.integers(1, 50))
            v = rng.uniform(0.0, 1.0)
            s = inc_beta_cf(v, j, alpha).value + inc_beta_cf(1.0 - v, alpha, j).value
            assert abs(s - 1.0) < 1e-12


class TestBarnesG:
    def test_small_integers(self):
        assert abs(log_barnes_g(1.0)) < 1e-12
        assert abs(log_barnes_g(2.0)) < 1e-12
        assert abs(log_barnes_g(3.0) - math.log(2.0)) < 1e-12

    def test_domain_error(self):
        with pytest.raises(ValueError):
            log_barnes_g(0.5)

    def test_against_mpmath(self):
        for z in np.concatenate([np.arange(1.0, 30.5, 0.5), [50.0, 123.4]]):
            ref = float(mp_log_barnes_g(float(z)))
            assert abs(log_barnes_g(float(z)) - ref) <= 1e-10
