import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathlab import catalog, quadrature
from pathlab.errors import DomainError, PreconditionError

# frozen by a 4e6-point midpoint Riemann oracle (stable to 13 digits)
PERIOD_16PI_17PI = 1.29372042696128e-4

ALPHA = 0.5002150335811506


class TestIntegrate:
    def test_zero_function(self):
        r = quadrature.integrate(lambda x: 0.0, (0.0, 1.0), tol=1e-12)
        assert r.value == 0.0 and r.converged

    def test_sine_half_period(self):
        r = quadrature.integrate(math.sin, (0.0, math.pi), tol=1e-10)
        assert r.converged
        assert r.value == pytest.approx(2.0, abs=1e-10)

    def test_oscillatory_period_against_riemann_oracle(self):
        r = quadrature.integrate(quadrature.osc_u_integrand,
                                 (16 * math.pi, 17 * math.pi), tol=1e-10)
        assert r.converged
        assert r.value == pytest.approx(PERIOD_16PI_17PI, rel=1e-9)
        assert r.value <= 1.0 / (256.0 * math.pi)  # (b-a)/a^2 envelope

    @given(st.tuples(*[st.floats(-4, 4) for _ in range(4)]),
           st.floats(-2, 0), st.floats(0.1, 2))
    @settings(max_examples=150, deadline=None)
    def test_cubics_exact_to_error_estimate(self, coeffs, a, b):
        p3, p2, p1, p0 = coeffs

        def f(x):
            return ((p3 * x + p2) * x + p1) * x + p0

        def F(x):
            return ((p3 * x / 4 + p2 / 3) * x + p1 / 2) * x * x + p0 * x

        r = quadrature.integrate(f, (a, b), tol=1e-9)
        assert abs(r.value - (F(b) - F(a))) <= r.abs_error_estimate + 1e-12

    def test_depth_cap_reports_nonconvergence(self):
        r = quadrature.integrate(lambda x: math.sqrt(abs(x)), (0.0, 1.0), tol=1e-16)
        assert not r.converged
        assert r.value == pytest.approx(2.0 / 3.0, rel=1e-10)

    def test_rejects_bad_inputs(self):
        from pathlab.intervals import Interval
        with pytest.raises(PreconditionError):
            quadrature.integrate(math.sin, (0.0, 1.0), tol=0.0)
        with pytest.raises(DomainError):
            quadrature.integrate(math.sin,
                                 Interval(0.0, math.inf, hi_closed=False))


class TestOscIntegrand:
    def test_range_and_zeros(self):
        ts = np.linspace(1e-4, 1.0, 50_000)
        vals = quadrature.osc_integrand(ts)
        assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
        assert quadrature.osc_integrand(0.0) == 0.0

    def test_exact_zero_at_cosine_root(self):
        t = 2.0 / math.pi  # 1/t = pi/2 up to rounding: value underflows to ~0
        assert quadrature.osc_integrand(t) <= 1e-12

    def test_scalar_and_array_agree(self):
        ts = np.array([0.3, 0.07, 0.011])
        arr = quadrature.osc_integrand(ts)
        assert arr == pytest.approx([quadrature.osc_integrand(float(t)) for t in ts])

    def test_peak_envelope_premise(self):
        # cos(d) <= exp(-d^2/2) on [0, pi/2]: the tail bound rests on this
        ds = np.linspace(0.0, math.pi / 2.0, 10_000)
        assert np.all(np.cos(ds) <= np.exp(-ds * ds / 2.0))


class TestPeriodTable:
    @pytest.mark.parametrize("steep", [False, True])
    @pytest.mark.parametrize("k", [1, 3, 16, 250])
    def test_matches_adaptive_integration(self, k, steep):
        p, q = (2.0, 1.5) if steep else (1.0, 2.0)
        vals, errs = quadrature._compute_periods(np.array([float(k)]), p, q)
        ref = quadrature.integrate(lambda u: quadrature.osc_u_integrand(u, p, q),
                                   (k * math.pi, (k + 1) * math.pi), tol=1e-13)
        # the adaptive route carries ~1e-13 absolute noise at sharp peaks
        assert vals[0] == pytest.approx(ref.value, rel=1e-6, abs=1e-13)

    def test_peak_tail_bound_dominates_periods(self):
        for k in (16, 100, 1000):
            vals, _ = quadrature._compute_periods(np.array([float(k)]), 1.0, 2.0)
            assert vals[0] <= quadrature.peak_tail_bound(k)


class TestOnesidedOsc:
    def test_odd_by_construction(self):
        plus = quadrature.onesided_osc_value(1.0 / (17 * math.pi))
        minus = quadrature.onesided_osc_value(-1.0 / (17 * math.pi))
        assert minus.value == -plus.value

    def test_value_at_one(self):
        r = quadrature.onesided_osc_value(1.0)
        assert r.converged
        assert 0.0 < r.value < 1.0
        assert r.value == pytest.approx(0.30404593514732337, abs=2e-7)

    def test_crude_tail_envelope(self):
        # F(1/(16*pi)) <= sum over k>=16 of 1/(pi*k^2) <= 1/(15*pi)
        r = quadrature.onesided_osc_value(1.0 / (16 * math.pi))
        assert 0.0 <= r.value <= 1.0 / (15.0 * math.pi)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            quadrature.onesided_osc_value(0.0)
        with pytest.raises(DomainError):
            quadrature.onesided_osc_value(1.5)

    def test_period_cap_reports_nonconvergence(self):
        r = quadrature.onesided_osc_value(0.5, tol=1e-12, max_periods=50)
        assert not r.converged
        assert r.abs_error_estimate > 1e-12

    def test_steep_variant_converges(self):
        r = quadrature.onesided_osc_value(0.25, steep=True)
        assert r.converged and r.value > 0.0

    def test_error_estimate_brackets_truth(self):
        # tighter tolerance value must sit inside the looser error band
        loose = quadrature.onesided_osc_value(1.0 / (20 * math.pi), tol=1e-5)
        tight = quadrature.onesided_osc_value(1.0 / (20 * math.pi), tol=1e-8)
        assert abs(loose.value - tight.value) <= loose.abs_error_estimate


class TestTailBoundChain:
    def test_alpha_constant(self):
        assert quadrature.alpha_constant() == pytest.approx(ALPHA, abs=1e-12)

    def test_n0_is_16(self):
        assert quadrature.compute_n0() == 16

    def test_chain_holds_for_sample_ns(self):
        for n in (16, 100):
            chk = quadrature.tail_bound(n)
            assert chk.holds
            assert chk.alpha == quadrature.alpha_constant()
            assert chk.numeric_value >= 0.0

    def test_large_n_bound_is_dominated_by_power_term(self):
        chk = quadrature.tail_bound(10_000)
        first = (8.0 / (5.0 * math.pi)) * 10_000 ** -1.25
        assert chk.analytic_bound == pytest.approx(first, rel=1e-12)
        assert chk.holds

    def test_below_n0_rejected(self):
        with pytest.raises(PreconditionError):
            quadrature.tail_bound(15)


class TestImproperXSinX3:
    def test_segments_alternate_and_decrease(self):
        rep = quadrature.improper_convergence_x_sin_x3(tol=1e-3)
        assert rep.cauchy_ok and rep.alternating and rep.decreasing
        assert rep.spread < 1e-3

    def test_crude_segment_bound(self):
        rep = quadrature.improper_convergence_x_sin_x3(tol=1e-3, segments=300)
        mags = np.abs(np.array(rep.segment_values))
        ks = np.arange(1, mags.size + 1, dtype=float)
        assert np.all(mags <= math.pi / 3.0 * (ks * math.pi) ** (-1.0 / 3.0))

    def test_partials_bracket_the_limit(self):
        rep = quadrature.improper_convergence_x_sin_x3(tol=1e-3, segments=200)
        s = rep.partial_values
        # alternating with decreasing magnitudes: consecutive partial sums
        # bracket every later one
        for k in (10, 50, 120):
            lo, hi = sorted((s[k], s[k + 1]))
            assert all(lo <= v <= hi for v in s[k + 2 :: 7])


class TestProbes:
    def test_x_sin_x3_growth(self):
        probe = quadrature.unboundedness_probe(catalog.get("improper-unbounded"),
                                               (4.0, 8.0))
        assert probe[0][1] >= 3.5
        assert probe[1][1] >= 7.0

    def test_decay_window(self):
        entry = catalog.get("decay-wild-deriv")
        for r in (10.0, 100.0):
            assert quadrature.window_max(entry, r, 2.0 * r) <= 1.0 / r
