import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathlab import curves
from pathlab.errors import PreconditionError, TracesDifferError
from pathlab.intervals import Interval


@pytest.fixture(scope="module")
def quarter_pair_table():
    g = curves.get_curve("quarter-circle")
    e = curves.get_curve("quarter-circle-sq")
    return g, e, curves.reparametrize(g, e, grid=201, tol=1e-8)


class TestReparametrize:
    def test_identity_pair(self):
        g = curves.get_curve("quarter-circle")
        tbl = curves.reparametrize(g, g, grid=100)
        assert np.max(np.abs(tbl.s_values() - tbl.t_values())) <= 1e-12
        assert np.max(np.abs(tbl.phi_primes() - 1.0)) <= 1e-9
        assert tbl.max_residual() <= 1e-12

    def test_quarter_circle_recovers_sqrt(self, quarter_pair_table):
        _, _, tbl = quarter_pair_table
        ts, ss = tbl.t_values(), tbl.s_values()
        assert float(np.max(np.abs(ss - np.sqrt(ts)))) <= 1e-8
        assert tbl.max_residual() <= 1e-8

    def test_phi_prime_positive_and_closed_form(self, quarter_pair_table):
        _, _, tbl = quarter_pair_table
        phis = tbl.phi_primes()
        assert np.all(phis > 0.0)
        ts = tbl.t_values()[1:]
        assert np.max(np.abs(phis[1:] - 0.5 / np.sqrt(ts))) <= 1e-8 * np.max(phis)

    def test_phi_prime_consistent_with_s_column(self, quarter_pair_table):
        # quotient phi' agrees with differences of the recovered s column;
        # sqrt's curvature blows up toward t = 0, so the grid-level central
        # difference is only meaningful away from the degenerate endpoint
        _, _, tbl = quarter_pair_table
        ts, ss, phis = tbl.t_values(), tbl.s_values(), tbl.phi_primes()
        mid = phis[1:-1]
        fd = (ss[2:] - ss[:-2]) / (ts[2:] - ts[:-2])
        rel = np.abs(mid - fd) / np.abs(mid)
        smooth = ts[1:-1] >= math.pi / 4.0
        assert float(np.max(rel[smooth])) <= 1e-4

    def test_rows_monotone(self, quarter_pair_table):
        _, _, tbl = quarter_pair_table
        assert np.all(np.diff(tbl.t_values()) > 0.0)
        assert np.all(np.diff(tbl.s_values()) > 0.0)

    def test_roundtrip_symmetry(self, quarter_pair_table):
        g, e, tbl = quarter_pair_table
        assert curves.roundtrip_max_error(g, e, tbl) <= 1e-7

    def test_circle_pair_rejected(self):
        with pytest.raises(TracesDifferError):
            curves.reparametrize(curves.get_curve("circle"),
                                 curves.get_curve("circle-overwound"), grid=100)

    def test_trace_mismatch_rejected_before_component_check(self):
        # distinct traces surface inside reparametrize; the component
        # derivative check is never reached
        with pytest.raises(TracesDifferError):
            curves.reparametrize(curves.get_curve("quarter-circle"),
                                 curves.get_curve("diagonal-segment"), grid=50)

    def test_dimension_mismatch(self):
        g = curves.get_curve("quarter-circle")
        seg1 = curves.ParametricCurve(
            id="line1", domain=Interval(0.0, 1.0),
            components=(lambda t: np.asarray(t, dtype=float),),
            derivatives=(lambda t: np.ones_like(np.asarray(t, dtype=float)),),
        )
        with pytest.raises(PreconditionError):
            curves.reparametrize(g, seg1)

    @given(st.floats(-0.25, 0.25))
    @settings(max_examples=40, deadline=None)
    def test_recovers_known_transform(self, c):
        # gamma = eta o phi with phi(t) = t + c*sin(pi t), a known monotone map
        def phi(t):
            return t + c * np.sin(math.pi * np.asarray(t, dtype=float))

        def dphi(t):
            return 1.0 + c * math.pi * np.cos(math.pi * np.asarray(t, dtype=float))

        eta = curves.ParametricCurve(
            id="eta", domain=Interval(0.0, 1.0),
            components=(lambda s: np.asarray(s, dtype=float) + 0.0,
                        lambda s: np.cos(np.asarray(s, dtype=float))),
            derivatives=(lambda s: np.ones_like(np.asarray(s, dtype=float)),
                         lambda s: -np.sin(np.asarray(s, dtype=float))),
        )
        gamma = curves.ParametricCurve(
            id="gamma", domain=Interval(0.0, 1.0),
            components=(phi, lambda t: np.cos(phi(t))),
            derivatives=(dphi, lambda t: -np.sin(phi(t)) * dphi(t)),
        )
        tbl = curves.reparametrize(gamma, eta, grid=60, tol=1e-8)
        assert float(np.max(np.abs(tbl.s_values() - phi(tbl.t_values())))) <= 1e-7


class TestInjectivityProbe:
    def test_overwound_circle_finds_full_turn_pairs(self):
        pairs = curves.injectivity_probe(curves.get_curve("circle-overwound"),
                                         512, 1.0, tol=1e-9)
        assert pairs
        crv = curves.get_curve("circle-overwound")
        for t1, t2 in pairs:
            assert t2 - t1 >= 1.0
            assert float(np.max(np.abs(crv.point(t1) - crv.point(t2)))) <= 1e-9
            assert abs(t2 - t1 - 2.0 * math.pi) <= 1e-6

    def test_injective_arc_is_clean(self):
        assert curves.injectivity_probe(curves.get_curve("quarter-circle"),
                                        512, 0.1) == []

    def test_figure_eight_origin_coincidences(self):
        pairs = curves.injectivity_probe(curves.get_curve("figure-eight"),
                                         512, 1.0)
        assert pairs
        crv = curves.get_curve("figure-eight")
        for t1, t2 in pairs:
            assert float(np.max(np.abs(crv.point(t1)))) <= 1e-8
            assert float(np.max(np.abs(crv.point(t2)))) <= 1e-8


class TestComponentDerivativeCheck:
    def test_quarter_pair_clean(self, quarter_pair_table):
        g, e, tbl = quarter_pair_table
        verdict = curves.component_derivative_check(g, e, tbl)
        assert verdict.passed
        assert verdict.checked == len(tbl.rows)

    def test_identity_pair_clean(self):
        seg = curves.get_curve("diagonal-segment")
        tbl = curves.reparametrize(seg, seg, grid=50)
        assert curves.component_derivative_check(seg, seg, tbl).passed


class TestArclength:
    def test_straight_segment(self):
        rep = curves.arclength(curves.get_curve("diagonal-segment"), 100)
        assert rep.lower_bound == pytest.approx(math.sqrt(2.0), rel=1e-12)
        assert not rep.diverging

    def test_circle_converges(self):
        rep = curves.arclength(curves.get_curve("circle"), 10_000,
                               growth_factor=1.5)
        assert abs(rep.lower_bound - 2.0 * math.pi) <= 1e-4
        assert not rep.diverging

    def test_monotone_under_refinement(self):
        rep = curves.arclength(curves.get_curve("osc-graph"), 10_000, doublings=4)
        assert all(b >= a for a, b in zip(rep.lengths, rep.lengths[1:]))

    def test_osc_graph_bound_at_fine_grid(self):
        # frozen from the polygonal-sum oracle; the sampled bound at 1e6
        # points sits far below the ~9.0 true length (resolution-limited)
        rep = curves.arclength(curves.get_curve("osc-graph"), 1_000_000,
                               doublings=0)
        assert rep.lower_bound == pytest.approx(6.4864888, abs=2e-6)
        assert rep.lower_bound > 6.0
