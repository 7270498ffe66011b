import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pathlab import catalog, numdiff
from pathlab.errors import DomainError, PreconditionError
from pathlab.intervals import Interval


def square_entry():
    return catalog.CatalogEntry(
        id="aux-square", domain=catalog.REGISTRY["identity"].domain,
        eval=lambda x: np.asarray(x, dtype=float) ** 2,
        analytic_derivative=lambda x: 2.0 * np.asarray(x, dtype=float),
        deriv_domain=catalog.REGISTRY["identity"].domain,
    )


def cube_entry():
    return catalog.CatalogEntry(
        id="aux-cube", domain=catalog.REGISTRY["identity"].domain,
        eval=lambda x: np.asarray(x, dtype=float) ** 3,
    )


class TestDerivative:
    def test_identity_is_exact(self):
        est = numdiff.derivative(catalog.get("identity"), 0.7)
        assert est.value == 1.0
        assert est.error_indicator <= 1e-12

    def test_min_no_flank_matches_closed_form(self):
        # f'(x) = x^2 (8x + 4x sin(1/x) - cos(1/x)), oracle evaluated by hand
        est = numdiff.derivative(catalog.get("min-no-flank"), 0.1)
        want = 0.01 * (0.8 + 0.4 * math.sin(10.0) - math.cos(10.0))
        assert abs(est.value - want) <= 1e-6

    def test_one_sided_quotient_along_breakpoints(self):
        n = 10**5
        est = numdiff.derivative(catalog.get("inverse-counterexample"), 0.0,
                                 scheme="forward", step=1.0 / (n + 1), levels=1)
        assert 1.0 / (1.0 + 1.0 / n) <= est.value <= 1.0

    def test_auto_switches_one_sided_at_boundary(self):
        entry = catalog.CatalogEntry(
            id="aux-lin", domain=Interval(0.0, 1.0),
            eval=lambda x: 3.0 * np.asarray(x, dtype=float),
        )
        est = numdiff.derivative(entry, 0.0)
        assert est.value == pytest.approx(3.0, abs=1e-9)

    def test_second_derivative(self):
        est = numdiff.derivative(square_entry(), 0.4, order=2)
        assert est.order == 2
        assert est.value == pytest.approx(2.0, abs=1e-7)

    def test_step_underflow_is_an_error(self):
        with pytest.raises(Exception):
            numdiff.derivative(square_entry(), 1e300, step=1.0)

    @given(st.tuples(*[st.floats(-3, 3) for _ in range(4)]),
           st.floats(-2, 2))
    @settings(max_examples=200, deadline=None)
    def test_cubics_are_differentiated_exactly(self, coeffs, x):
        a, b, c, d = coeffs

        def f(t):
            return ((a * t + b) * t + c) * t + d

        est = numdiff.derivative(f, x, domain=Interval(-10, 10))
        want = 3 * a * x * x + 2 * b * x + c
        assert est.value == pytest.approx(want, abs=1e-5, rel=1e-7)


class TestRichardsonConsistency:
    def test_analytic_vs_fd_on_declared_domains(self):
        # every catalog entry carrying a closed-form derivative and a
        # finite-difference check domain must agree on 1e3 samples
        for eid in catalog.entry_ids():
            entry = catalog.REGISTRY[eid]
            if isinstance(entry, catalog.BivariateEntry):
                continue
            if entry.analytic_derivative is None or entry.fd_check_domain is None:
                continue
            dom = entry.fd_check_domain
            mags = np.linspace(dom.lo if dom.lo > 0 else max(dom.lo, 0.05),
                               dom.hi, 500)
            xs = np.concatenate([mags, -mags]) if entry.domain.contains(-dom.hi) else mags
            analytic = entry.deriv_many(xs)
            for x, want in zip(xs[::7], analytic[::7]):
                est = numdiff.derivative(entry, float(x))
                tol = max(1e-6, 1e3 * float(np.spacing(abs(want))))
                assert abs(est.value - want) <= tol, (eid, float(x))


class TestQuotientBounds:
    def test_tau_zero_attains_upper(self):
        qb = numdiff.difference_quotient_bounds(17, 0.0)
        assert qb.q == qb.upper == 1.0

    def test_near_max_tau_for_n1(self):
        qb = numdiff.difference_quotient_bounds(1, 0.4999)
        assert qb.q == pytest.approx(0.75, abs=1e-3)
        assert qb.lower == 0.5

    def test_exact_rational_midpoint(self):
        qb = numdiff.difference_quotient_bounds(10, 1.0 / 220.0)
        assert qb.q == pytest.approx(41.0 / 42.0, rel=1e-15)

    def test_exhaustive_containment(self):
        for n in range(1, 101):
            top = 1.0 / (n * (n + 1.0))
            for tau in np.linspace(0.0, top, 40, endpoint=False):
                qb = numdiff.difference_quotient_bounds(n, float(tau))
                assert qb.lower <= qb.q <= qb.upper

    @given(st.integers(1, 100), st.floats(0.0, 1.0, exclude_max=True))
    @settings(max_examples=300, deadline=None)
    def test_property_containment(self, n, frac):
        tau = frac / (n * (n + 1.0))
        assume(tau < 1.0 / (n * (n + 1.0)))  # frac near 1 can round onto the bound
        qb = numdiff.difference_quotient_bounds(n, tau)
        assert qb.lower <= qb.q <= qb.upper

    def test_tau_out_of_range(self):
        with pytest.raises(PreconditionError):
            numdiff.difference_quotient_bounds(3, 0.2)


class TestSignChangeScan:
    def test_min_no_flank_has_both_witnesses(self):
        rep = numdiff.sign_change_scan(catalog.get("min-no-flank"),
                                       Interval(1e-3, 1e-1), 100_000)
        assert rep.positive_witness is not None
        assert rep.negative_witness is not None
        assert rep.positive_witness[1] > 0 > rep.negative_witness[1]

    def test_monotone_side_has_no_negative_witness(self):
        rep = numdiff.sign_change_scan(square_entry(), Interval(0.0, 1.0), 1000)
        assert rep.negative_witness is None
        assert rep.positive_witness is not None

    def test_inj_fail_alpha_one_sup_exceeds_100(self):
        entry = catalog.make_inj_fail(1.0)
        rep = numdiff.sign_change_scan(entry, Interval(1e-4, 1e-2), 1_000_000)
        assert rep.sup_abs_seen > 100.0

    def test_cutoff_region_is_rejected(self):
        with pytest.raises(DomainError):
            numdiff.sign_change_scan(catalog.get("inj-fail"), Interval(1e-8, 1e-2), 100)

    def test_deterministic(self):
        a = numdiff.sign_change_scan(catalog.get("min-no-flank"),
                                     Interval(1e-3, 1e-1), 10_000)
        b = numdiff.sign_change_scan(catalog.get("min-no-flank"),
                                     Interval(1e-3, 1e-1), 10_000)
        assert a == b

    def test_witnesses_lie_inside_and_have_claimed_sign(self):
        rep = numdiff.sign_change_scan(catalog.get("inj-fail"),
                                       Interval(1e-4, 1e-2), 100_000, threshold=50.0)
        for w, sign in ((rep.positive_witness, 1), (rep.negative_witness, -1)):
            assert w is not None
            assert rep.interval.contains(w[0])
            assert sign * w[1] > 50.0


class TestInverseDerivative:
    def test_cubic_plus_linear(self):
        chk = numdiff.inverse_derivative_check(lambda x: x**3 + x,
                                               Interval(-2.0, 2.0), 1.0)
        assert chk.via_formula == pytest.approx(0.25, abs=1e-10)
        assert abs(chk.direct - 0.25) <= 1e-6

    def test_identity(self):
        chk = numdiff.inverse_derivative_check(lambda x: x, Interval(-1.0, 1.0), 0.0)
        assert chk.direct == chk.via_formula == 1.0

    def test_flat_point_rejected(self):
        with pytest.raises(PreconditionError):
            numdiff.inverse_derivative_check(lambda x: x**3, Interval(-2.0, 2.0), 0.0)

    def test_non_monotone_rejected(self):
        with pytest.raises(PreconditionError):
            numdiff.inverse_derivative_check(lambda x: x * x, Interval(-1.0, 1.0), 0.5)

    def test_relative_agreement_on_monotone_set(self):
        for f, fp, x0 in (
            (lambda x: math.exp(x), math.exp, 0.3),
            (lambda x: x**3 + 2 * x, lambda x: 3 * x * x + 2, -0.7),
            (lambda x: math.atan(x), lambda x: 1 / (1 + x * x), 0.9),
        ):
            chk = numdiff.inverse_derivative_check(f, Interval(-2.0, 2.0), x0,
                                                   f_prime=fp)
            assert abs(chk.direct - chk.via_formula) <= 1e-5 * (1 + abs(chk.via_formula))


class TestTangentSide:
    def test_torsion_osc_crosses(self):
        v = numdiff.tangent_side_test(catalog.get("torsion-osc"), 0.0)
        assert v.is_torsion_point
        assert v.right_sign == 1 and v.left_sign == -1
        assert v.right_witness is not None and v.left_witness is not None

    def test_cube_crosses(self):
        assert numdiff.tangent_side_test(cube_entry(), 0.0).is_torsion_point

    def test_square_does_not(self):
        v = numdiff.tangent_side_test(square_entry(), 0.0)
        assert not v.is_torsion_point
        assert v.right_sign == v.left_sign == 1


class TestConvexityScan:
    def test_torsion_osc_both_signs_both_sides(self):
        for iv in (Interval(1e-3, 1e-1), Interval(-1e-1, -1e-3)):
            v = numdiff.convexity_scan(catalog.get("torsion-osc"), iv, 4096)
            assert v.both_signs

    def test_square_only_nonnegative(self):
        v = numdiff.convexity_scan(square_entry(), Interval(-1.0, 1.0), 100)
        assert not v.both_signs
        assert v.negative_witness is None
        assert v.positive_witness is not None

    def test_min_no_flank_wiggles(self):
        v = numdiff.convexity_scan(catalog.get("min-no-flank"),
                                   Interval(1e-3, 1e-2), 4096)
        assert v.both_signs

    def test_grid_floor(self):
        with pytest.raises(PreconditionError):
            numdiff.convexity_scan(square_entry(), Interval(0.0, 1.0), 3)
