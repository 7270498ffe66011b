"""Named verification cases: each documented phenomenon maps to one case.

A case evaluates a fixed list of claims and returns a machine-readable
report.  Claims are decidable at desk scale (threshold witnesses, bound
checks); where a property is not decidable by sampling (unboundedness),
the claim text says the result is evidence at the scan resolution.  A
failed numeric convergence marks the claim inconclusive rather than
failing it.  Reports are deterministic for a fixed config; the serialized
form zeroes runtime_ms so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import catalog, curves, multivar, numdiff, quadrature
from .config import LabConfig
from .errors import (
    NumericError,
    PathlabError,
    PreconditionError,
    TracesDifferError,
    UnknownEntryError,
)
from .intervals import Interval

__all__ = ["ClaimResult", "VerificationReport", "case_ids", "run_case", "run_all"]


@dataclass(frozen=True)
class ClaimResult:
    text: str
    status: str              # pass | fail | inconclusive
    witnesses: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    case_id: str
    status: str              # pass iff all claims pass
    claims: tuple
    config_digest: str
    runtime_ms: int

    def to_json_dict(self) -> dict:
        # runtime is zeroed in the serialized form: reports must be
        # byte-identical across runs with identical config
        return {
            "case_id": self.case_id,
            "status": self.status,
            "claims": [
                {"text": c.text, "status": c.status, "witnesses": c.witnesses}
                for c in self.claims
            ],
            "config_digest": self.config_digest,
            "runtime_ms": 0,
        }


def _claim(text: str, ok: bool, **witnesses) -> ClaimResult:
    return ClaimResult(text=text, status="pass" if ok else "fail", witnesses=witnesses)


def _inconclusive(text: str, reason: str) -> ClaimResult:
    return ClaimResult(text=text, status="inconclusive", witnesses={"reason": reason})


def _guarded(text: str, fn: Callable[[], ClaimResult]) -> ClaimResult:
    try:
        return fn()
    except NumericError as exc:
        return _inconclusive(text, f"numeric non-convergence: {exc}")


# ---------------------------------------------------------------------------
# helper entries used by several cases
# ---------------------------------------------------------------------------


def _square_entry() -> catalog.CatalogEntry:
    return catalog.CatalogEntry(
        id="aux-square", domain=catalog.REGISTRY["identity"].domain,
        eval=lambda x: np.asarray(x, dtype=float) ** 2,
        analytic_derivative=lambda x: 2.0 * np.asarray(x, dtype=float),
        deriv_domain=catalog.REGISTRY["identity"].domain,
    )


def _cube_entry() -> catalog.CatalogEntry:
    return catalog.CatalogEntry(
        id="aux-cube", domain=catalog.REGISTRY["identity"].domain,
        eval=lambda x: np.asarray(x, dtype=float) ** 3,
    )


# ---------------------------------------------------------------------------
# cases
# ---------------------------------------------------------------------------


def _case_inverse_counterexample(cfg: LabConfig):
    claims = []
    ns = np.arange(1, 100_001)
    xs = 1.0 / (ns + 1.0)
    q = catalog.staircase(xs) / xs
    lo = ns / (ns + 1.0)
    ok = bool(np.all(q <= 1.0) and np.all(q >= lo))
    claims.append(_claim(
        "one-sided quotients at x=1/(n+1) stay in [1/(1+1/n), 1] for n <= 1e5",
        ok, min_quotient=float(np.min(q)), max_quotient=float(np.max(q)),
    ))
    est = numdiff.derivative(catalog.get("inverse-counterexample"), 0.0,
                             fd_step_scale=cfg.fd_step_scale)
    claims.append(_claim(
        "extrapolated derivative at 0 is within 1e-3 of 1",
        abs(est.value - 1.0) <= 1e-3, estimate=est.value,
    ))
    eps = 1e-9
    cont = []
    for n in range(2, 51):
        mid = (2.0 * n + 1.0) / (2.0 * n * (n + 1.0))
        cont.append(abs(catalog.staircase(1.0 / n - eps) - mid) <= eps)
    claims.append(_claim(
        "left-branch values approach the gap midpoint at every breakpoint 1/n",
        all(cont), breakpoints_checked=len(cont),
    ))
    samples = np.linspace(-0.9999, 0.9999, 10_001)
    claims.append(_claim(
        "odd symmetry f(-x) = -f(x) on 1e4 samples",
        bool(np.all(catalog.staircase(-samples) == -catalog.staircase(samples))),
    ))
    spot = {0.26: True, 0.24: False, 0.5: True, 0.8: False}
    claims.append(_claim(
        "gap membership matches the branch-image intervals at spot values",
        all(catalog.staircase_gap_member(y) is want for y, want in spot.items()),
        spot_values={str(k): v for k, v in spot.items()},
    ))
    return claims


def _case_inverse_formula(cfg: LabConfig):
    claims = []
    chk = numdiff.inverse_derivative_check(lambda x: x**3 + x, Interval(-2.0, 2.0), 1.0,
                                           fd_step_scale=cfg.fd_step_scale)
    claims.append(_claim(
        "inverse of x^3+x at x0=1: measured slope matches 1/f'(1) = 0.25 within 1e-6",
        abs(chk.direct - 0.25) <= 1e-6 and abs(chk.via_formula - 0.25) <= 1e-12,
        direct=chk.direct, via_formula=chk.via_formula,
    ))
    ident = numdiff.inverse_derivative_check(lambda x: x, Interval(-1.0, 1.0), 0.0)
    claims.append(_claim(
        "identity map: both routes give exactly 1",
        ident.direct == 1.0 and ident.via_formula == 1.0,
    ))
    try:
        numdiff.inverse_derivative_check(lambda x: x**3, Interval(-2.0, 2.0), 0.0)
        vanished = False
    except PreconditionError:
        vanished = True
    claims.append(_claim(
        "x^3 at x0=0 is rejected: the formula needs f'(x0) != 0",
        vanished,
    ))
    return claims


def _case_inj_fail(cfg: LabConfig):
    claims = []
    entry = catalog.get("inj-fail")
    est = numdiff.derivative(entry, 0.0, fd_step_scale=cfg.fd_step_scale)
    claims.append(_claim(
        "derivative at 0 estimates to 1 within 1e-3",
        abs(est.value - 1.0) <= 1e-3, estimate=est.value,
    ))
    rep = numdiff.sign_change_scan(entry, Interval(1e-4, 1e-2), cfg.scan_grid,
                                   threshold=100.0)
    claims.append(_claim(
        "derivative exceeds +100 and -100 on (1e-4, 1e-2): sign-changing and "
        "large both ways at scan resolution",
        rep.positive_witness is not None and rep.negative_witness is not None,
        positive_witness=rep.positive_witness, negative_witness=rep.negative_witness,
        sup_abs_seen=rep.sup_abs_seen,
    ))
    return claims


def _case_min_no_flank(cfg: LabConfig):
    claims = []
    entry = catalog.get("min-no-flank")
    mags = np.geomspace(1e-3, 0.1, 500)
    xs = np.concatenate([-mags, mags])
    vals = entry.eval_many(xs)
    claims.append(_claim(
        "strict local minimum at 0: f > f(0) = 0 on 1e3 nearby samples",
        float(entry.eval(0.0)) == 0.0 and bool(np.all(vals > 0.0)),
    ))
    rep = numdiff.sign_change_scan(entry, Interval(1e-3, 1e-1), 100_000)
    claims.append(_claim(
        "derivative takes both signs on (1e-3, 1e-1): no monotone flanks",
        rep.positive_witness is not None and rep.negative_witness is not None,
        positive_witness=rep.positive_witness, negative_witness=rep.negative_witness,
    ))
    est = numdiff.derivative(entry, 0.1, fd_step_scale=cfg.fd_step_scale)
    analytic = float(entry.analytic_derivative(0.1))
    claims.append(_claim(
        "finite differences reproduce the closed-form derivative at x=0.1 within 1e-6",
        abs(est.value - analytic) <= 1e-6, estimate=est.value, analytic=analytic,
    ))
    return claims


def _case_torsion(cfg: LabConfig):
    claims = []
    v1 = numdiff.tangent_side_test(catalog.get("torsion-osc"), 0.0,
                                   fd_step_scale=cfg.fd_step_scale)
    claims.append(_claim(
        "graph crosses its tangent at 0 (above right, below left)",
        v1.is_torsion_point and v1.right_sign == 1 and v1.left_sign == -1,
        slope=v1.slope,
    ))
    claims.append(_claim(
        "tangent-crossing holds for x^3 and fails for x^2 at 0",
        numdiff.tangent_side_test(_cube_entry(), 0.0).is_torsion_point
        and not numdiff.tangent_side_test(_square_entry(), 0.0).is_torsion_point,
    ))
    right = numdiff.convexity_scan(catalog.get("torsion-osc"), Interval(1e-3, 1e-1), 4096)
    left = numdiff.convexity_scan(catalog.get("torsion-osc"), Interval(-1e-1, -1e-3), 4096)
    claims.append(_claim(
        "second differences take both signs on (1e-3, 1e-1) and (-1e-1, -1e-3): "
        "neither convex nor concave on either side",
        right.both_signs and left.both_signs,
        right_positive=right.positive_witness, right_negative=right.negative_witness,
    ))
    return claims


def _osc_integrand_sup(delta: float, n_uniform: int):
    ts = np.linspace(0.0, delta, n_uniform + 1)[1:]
    m_lo = int(math.ceil(1.0 / (math.pi * delta)))
    crest = 1.0 / (math.pi * np.arange(m_lo, m_lo + 200))
    ts = np.concatenate([ts, crest])
    vals = quadrature.osc_integrand(ts)
    return float(np.max(vals)), bool(np.all(vals >= 0.0)), ts.size


def _case_onesided_osc(cfg: LabConfig):
    claims = []
    h = 1.0 / (1e4 * math.pi)

    def slope_claim():
        res = quadrature.onesided_osc_value(h, tol=cfg.osc_tol)
        if not res.converged:
            raise NumericError("integral did not converge at the configured tolerance")
        ratio = res.value / h
        return _claim(
            "one-sided slope estimate F(h)/h at h = 1/(1e4*pi) stays below 0.05",
            0.0 <= ratio <= 0.05, ratio=ratio, value=res.value,
            abs_error_estimate=res.abs_error_estimate,
        )

    claims.append(_guarded("slope estimate", slope_claim))

    total = 0
    sups = {}
    nonneg = True
    for delta, n in ((1e-1, 400_000), (1e-2, 300_000), (1e-3, 300_000)):
        sup, ok, count = _osc_integrand_sup(delta, n)
        sups[f"sup_on_(0,{delta:g})"] = sup
        nonneg = nonneg and ok
        total += count
    claims.append(_claim(
        "integrand sup on every (0, delta), delta in {1e-1,1e-2,1e-3}, is >= 0.99 "
        "while all sampled values are >= 0 (1e6 samples)",
        all(v >= 0.99 for v in sups.values()) and nonneg and total >= 1_000_000,
        **sups, samples=total,
    ))

    def ratio_sequence():
        seq = []
        for n in (16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192):
            res = quadrature.onesided_osc_value(1.0 / (n * math.pi), tol=cfg.osc_tol)
            if not res.converged:
                raise NumericError("ratio-sequence integral did not converge")
            seq.append(res.value * n * math.pi)
        decreasing = all(b < a for a, b in zip(seq, seq[1:]))
        below = next((n for n, v in zip((16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192), seq)
                      if v < 0.05), None)
        return _claim(
            "F(1/(N*pi))*N*pi decreases and drops below 0.05 well before N = 1e4",
            decreasing and below is not None and below <= 10_000,
            first_below=below, sequence_head=[round(v, 6) for v in seq[:4]],
        )

    claims.append(_guarded("ratio sequence", ratio_sequence))
    return claims


def _case_onesided_osc_steep(cfg: LabConfig):
    claims = []

    def value_claim():
        plus = quadrature.onesided_osc_value(0.25, tol=cfg.osc_tol, steep=True)
        minus = quadrature.onesided_osc_value(-0.25, tol=cfg.osc_tol, steep=True)
        if not (plus.converged and minus.converged):
            raise NumericError("steep variant integral did not converge")
        return _claim(
            "steep variant F is finite, positive, and odd at x = 0.25",
            plus.value > 0.0 and minus.value == -plus.value,
            value=plus.value,
        )

    claims.append(_guarded("steep variant value", value_claim))
    ms = np.arange(3184, 3284)
    ts = 1.0 / (math.pi * ms)
    sup = float(np.max(quadrature.osc_integrand_steep(ts)))
    claims.append(_claim(
        "steep integrand exceeds 100 near 0 (sampled sup at crest points; "
        "unboundedness is evidence at this resolution only)",
        sup >= 100.0, sampled_sup=sup,
    ))
    return claims


def _case_tail_bounds(cfg: LabConfig):
    claims = []
    n0 = quadrature.compute_n0()
    alpha = quadrature.alpha_constant()

    def chain():
        rows = {}
        ok = True
        for n in (n0, 100, 400):
            chk = quadrature.tail_bound(n, tol=cfg.osc_tol)
            rows[f"N={n}"] = {"numeric": chk.numeric_value, "bound": chk.analytic_bound}
            ok = ok and chk.holds
        return _claim(
            "tail integral <= (8/(5*pi))*N^(-5/4) + 2*alpha^sqrt(N)/(pi*log(1/alpha)) "
            "for N in {N0, 100, 400}",
            ok, alpha=alpha, n0=n0, **rows,
        )

    claims.append(_guarded("tail chain", chain))

    ks = np.arange(16, 201)
    ok = True
    worst = 0.0
    for k in ks:
        a_k, b_k = k * math.pi, (k + 1.0 / k**0.25) * math.pi
        c_k, a_n = (k + 1.0 - 1.0 / k**0.25) * math.pi, (k + 1.0) * math.pi
        bound = 1.0 / (math.pi * k**2.25)
        for lo, hi in ((a_k, b_k), (c_k, a_n)):
            val = quadrature.integrate(quadrature.osc_u_integrand, (lo, hi), tol=1e-13).value
            worst = max(worst, val / bound)
            ok = ok and val <= bound
    claims.append(_claim(
        "per-period flank integrals stay below 1/(pi*k^(9/4)) for k in 16..200",
        ok, worst_fraction_of_bound=worst,
    ))

    ks = np.arange(16, 1001, dtype=float)
    b = (ks + ks**-0.25) * math.pi
    c = (ks + 1.0 - ks**-0.25) * math.pi
    claims.append(_claim(
        "period split points stay ordered: a_k <= b_k <= c_k <= a_(k+1) for k >= 16",
        bool(np.all(ks * math.pi <= b) and np.all(b <= c)
             and np.all(c <= (ks + 1.0) * math.pi)),
    ))

    ys = np.linspace(0.0, math.pi / 2.0, 10_000)
    claims.append(_claim(
        "cos y <= 1 - y^2/4 on a 1e4-point grid over [0, pi/2]",
        bool(np.all(np.cos(ys) <= 1.0 - ys * ys / 4.0)),
    ))
    return claims


def _case_improper_unbounded(cfg: LabConfig):
    claims = []
    rep = quadrature.improper_convergence_x_sin_x3(tol=1e-3)
    mags = np.abs(np.array(rep.segment_values))
    ks = np.arange(1, mags.size + 1, dtype=float)
    crude = math.pi / 3.0 * (ks * math.pi) ** (-1.0 / 3.0)
    claims.append(_claim(
        "zero-partitioned segments alternate and their magnitudes strictly decrease "
        "(checked through k = 1e3)",
        rep.alternating and rep.decreasing and bool(np.all(mags <= crude)),
        segments=len(rep.segment_values),
    ))
    claims.append(_claim(
        "averaged partial sums settle within 1e-3 (alternating enclosure)",
        rep.cauchy_ok, spread=rep.spread,
    ))
    probe = quadrature.unboundedness_probe(catalog.get("improper-unbounded"), (4.0, 8.0))
    claims.append(_claim(
        "sampled max of |x*sin(x^3)| reaches 3.5 on [0,4] and 7 on [0,8] "
        "(growth evidence at this resolution; unboundedness is not decidable by sampling)",
        probe[0][1] >= 3.5 and probe[1][1] >= 7.0,
        max_on_4=probe[0][1], max_on_8=probe[1][1],
    ))
    return claims


def _case_decay_wild(cfg: LabConfig):
    claims = []
    entry = catalog.get("decay-wild-deriv")
    rows = {}
    ok = True
    for r in (10.0, 100.0, 1000.0):
        m = quadrature.window_max(entry, r, 2.0 * r, grid=200_000)
        rows[f"max_on_[{r:g},{2*r:g}]"] = m
        ok = ok and m <= 1.0 / r
    claims.append(_claim(
        "decay: max|f| on [R, 2R] stays below 1/R for R in {10, 100, 1000}",
        ok, **rows,
    ))
    drows = {}
    dok = True
    for r in (10.0, 100.0):
        ms = np.arange(math.ceil(r**3 / math.pi), math.ceil(r**3 / math.pi) + 50)
        xs = np.cbrt(math.pi * ms)
        sup = float(np.max(np.abs(entry.deriv_many(xs))))
        drows[f"deriv_sup_near_{r:g}"] = sup
        dok = dok and sup >= 2.0 * r
    claims.append(_claim(
        "derivative magnitude keeps growing: sampled sup |f'| near R reaches 2R "
        "for R in {10, 100} (evidence at this resolution)",
        dok, **drows,
    ))
    return claims


def _case_reparam(cfg: LabConfig):
    claims = []
    g = curves.get_curve("quarter-circle")
    e = curves.get_curve("quarter-circle-sq")
    tbl = curves.reparametrize(g, e, grid=cfg.reparam_points, tol=cfg.residual_tol,
                               probe_grid=cfg.probe_grid)
    ts, ss = tbl.t_values(), tbl.s_values()
    dev = float(np.max(np.abs(ss - np.sqrt(ts))))
    claims.append(_claim(
        "recovered transform matches sqrt(t) within 1e-8 with residual <= tol",
        dev <= 1e-8 and tbl.max_residual() <= cfg.residual_tol,
        max_deviation=dev, max_residual=tbl.max_residual(),
    ))
    phis = tbl.phi_primes()
    inner = phis[1:]
    expect = 0.5 / np.sqrt(ts[1:])
    rel = float(np.max(np.abs(inner - expect) / expect))
    claims.append(_claim(
        "phi' is positive throughout and matches 1/(2*sqrt(t)) on interior rows",
        bool(np.all(phis > 0.0)) and rel <= 1e-4, max_relative_error=rel,
    ))
    rt = curves.roundtrip_max_error(g, e, tbl, tol=cfg.residual_tol)
    claims.append(_claim(
        "round-trip through the reverse transform returns t within 1e-7",
        rt <= 1e-7, roundtrip_error=rt,
    ))
    ident = curves.reparametrize(g, g, grid=100, tol=cfg.residual_tol,
                                 probe_grid=cfg.probe_grid)
    claims.append(_claim(
        "self-reparametrization is the identity with phi' = 1",
        float(np.max(np.abs(ident.s_values() - ident.t_values()))) <= 1e-12
        and float(np.max(np.abs(ident.phi_primes() - 1.0))) <= 1e-9,
    ))
    cd = curves.component_derivative_check(g, e, tbl)
    claims.append(_claim(
        "nonvanishing selected target-component derivatives transfer to the source",
        cd.passed, rows_checked=cd.checked,
    ))
    return claims


def _case_same_trace(cfg: LabConfig):
    claims = []
    circle = curves.get_curve("circle")
    wound = curves.get_curve("circle-overwound")
    try:
        curves.reparametrize(circle, wound, grid=100, tol=cfg.residual_tol,
                             probe_grid=cfg.probe_grid)
        rejected = False
        message = ""
    except TracesDifferError as exc:
        rejected = True
        message = str(exc)
    claims.append(_claim(
        "full-circle vs 1.5-turn circle: same trace but the pair is rejected",
        rejected, reason=message,
    ))
    pairs = curves.injectivity_probe(wound, cfg.probe_grid, 1.0, tol=1e-9)
    offset_ok = bool(pairs) and all(abs(t2 - t1 - 2.0 * math.pi) <= 1e-6 for t1, t2 in pairs)
    claims.append(_claim(
        "probe exhibits (t, t+2*pi) coincidences with point distance <= 1e-9",
        offset_ok, pairs_found=len(pairs),
        first_pair=list(pairs[0]) if pairs else None,
    ))
    clean = curves.injectivity_probe(curves.get_curve("quarter-circle"), cfg.probe_grid, 0.1)
    claims.append(_claim(
        "quarter-circle probe finds no coincidences",
        clean == [],
    ))
    return claims


def _case_parabola_trap(cfg: LabConfig):
    claims = []
    entry = catalog.get("parabola-trap")
    sweep = multivar.direction_sweep(entry, (0.0, 0.0), count=cfg.direction_count)
    claims.append(_claim(
        "every direction through the origin has a strict line-restricted minimum",
        sweep.line_test_passes == sweep.directions_tested,
        passes=sweep.line_test_passes, tested=sweep.directions_tested,
    ))
    witness = multivar.path_refutation(entry, (0.0, 0.0), radius=1e-2)
    claims.append(_claim(
        "a quadratic path still undercuts the origin: witness with f < -1e-12 "
        "inside the 1e-2 ball",
        witness is not None and witness.value < -1e-12
        and math.hypot(*witness.point) <= 1e-2,
        witness=None if witness is None else {
            "point": list(witness.point), "value": witness.value,
            "a": witness.a, "b": witness.b, "t": witness.t,
        },
    ))
    t = np.linspace(-1.0, 1.0, 1000)
    f = catalog.parabola_trap_value(2.0 * t, t * t)
    ref = -3.0 * (t * t) * (t * t)
    ulps = np.abs(f - ref) / np.spacing(np.maximum(np.abs(ref), np.spacing(0.0)))
    claims.append(_claim(
        "f(2t, t^2) equals -3*t^4 to within 4 ulps on 1e3 points",
        bool(np.all(ulps <= 4.0)), max_ulps=float(np.max(ulps)),
    ))
    hess = multivar.hessian_classify(entry, (0.0, 0.0))
    lam = sorted(hess.eigenvalues)
    claims.append(_claim(
        "Hessian at the origin is positive-semidefinite with eigenvalues {0, 10} "
        "within 1e-4",
        hess.hessian_class == "positive-semidefinite"
        and abs(lam[0]) <= 1e-4 and abs(lam[1] - 10.0) <= 1e-4,
        eigenvalues=list(lam), hessian_class=hess.hessian_class,
    ))
    xs = np.linspace(-0.5, 0.5, 101)
    xs = xs[xs != 0.0]
    mid = catalog.parabola_trap_value(xs, 0.6 * xs * xs)
    outside_lo = catalog.parabola_trap_value(xs, 0.1 * xs * xs)
    outside_hi = catalog.parabola_trap_value(xs, 1.5 * xs * xs)
    claims.append(_claim(
        "f is negative exactly between the parabolas y = x^2/5 and y = x^2 "
        "(sampled inside and outside the wedge)",
        bool(np.all(mid < 0.0) and np.all(outside_lo > 0.0) and np.all(outside_hi > 0.0)),
    ))
    return claims


def _case_osc_curve_trap(cfg: LabConfig):
    claims = []
    verdict = multivar.curve_restriction_check()
    claims.append(_claim(
        "f restricted to the curve (x, sin(1/x)) is strictly positive on 1e3 samples "
        "with 1e-3 <= |x| <= 1 (sign decided in exponent space)",
        verdict.on_curve_all_positive, samples=verdict.on_curve_samples,
    ))
    claims.append(_claim(
        "each of 8 dyadic annuli around the origin holds both a positive point "
        "above the curve and a negative point below it",
        all(sa == 1 and sb == -1 for _, _, _, sa, sb in verdict.annuli),
        annuli=len(verdict.annuli),
    ))
    big_x = 0.5
    on_curve = catalog.osc_trap_value(big_x, catalog.osc_trap_curve(big_x))
    claims.append(_claim(
        "direct evaluation agrees where no underflow occurs: f(0.5, sin(2)) = exp(-16) "
        "and f(0, y) = 0",
        abs(on_curve - math.exp(-16.0)) <= 1e-22
        and catalog.osc_trap_value(0.0, 0.3) == 0.0,
        f_on_curve=on_curve,
    ))
    return claims


def _case_rectifiability(cfg: LabConfig):
    claims = []
    circle = curves.arclength(curves.get_curve("circle"), 10_000, growth_factor=1.5)
    claims.append(_claim(
        "circle polygonal length converges: within 1e-4 of 2*pi at grid 1e4, "
        "no divergence flag",
        abs(circle.lower_bound - 2.0 * math.pi) <= 1e-4 and not circle.diverging,
        lower_bound=circle.lower_bound,
    ))
    osc = curves.arclength(curves.get_curve("osc-graph"), 1_000_000, doublings=2,
                           growth_factor=1.5)
    claims.append(_claim(
        "oscillation-graph bound is monotone nondecreasing under grid refinement",
        all(b >= a for a, b in zip(osc.lengths, osc.lengths[1:])),
        lengths=[round(v, 4) for v in osc.lengths],
    ))

    def graph_on(a: float) -> curves.ParametricCurve:
        base = curves.get_curve("osc-graph")
        return curves.ParametricCurve(
            id=f"osc-graph-from-{a:g}", domain=Interval(a, 1.0),
            components=base.components, derivatives=base.derivatives,
        )

    lengths = [curves.arclength(graph_on(a), 2_000_000, doublings=0).lower_bound
               for a in (0.2, 0.1, 0.05, 0.025, 0.0125)]
    growth = [b - a for a, b in zip(lengths, lengths[1:])]
    claims.append(_claim(
        "every halving of the left endpoint adds >= 0.6 to the length bound "
        "(log-divergence: the graph has infinite length on intervals touching 0)",
        all(g >= 0.6 for g in growth),
        lengths=[round(v, 4) for v in lengths],
        increments=[round(v, 4) for v in growth],
    ))
    return claims


_CASES = {
    "inverse-counterexample": _case_inverse_counterexample,
    "inverse-formula": _case_inverse_formula,
    "inj-fail": _case_inj_fail,
    "min-no-flank": _case_min_no_flank,
    "torsion-osc": _case_torsion,
    "onesided-osc": _case_onesided_osc,
    "onesided-osc-unbounded": _case_onesided_osc_steep,
    "tail-bound-chain": _case_tail_bounds,
    "improper-unbounded": _case_improper_unbounded,
    "decay-wild-deriv": _case_decay_wild,
    "quarter-circle-reparam": _case_reparam,
    "same-trace-rejection": _case_same_trace,
    "parabola-trap": _case_parabola_trap,
    "osc-curve-trap": _case_osc_curve_trap,
    "rectifiability": _case_rectifiability,
}


def case_ids() -> list:
    return sorted(_CASES)


def run_case(case_id: str, config: Optional[LabConfig] = None) -> VerificationReport:
    """Execute one case's claims; deterministic for a fixed config."""
    if case_id not in _CASES:
        raise UnknownEntryError(case_id)
    cfg = config or LabConfig()
    start = time.perf_counter()
    try:
        claims = tuple(_CASES[case_id](cfg))
    except NumericError as exc:
        claims = (_inconclusive("case aborted", f"numeric non-convergence: {exc}"),)
    except PathlabError as exc:
        claims = (ClaimResult(text="case aborted", status="fail",
                              witnesses={"error": str(exc)}),)
    elapsed = int(1000.0 * (time.perf_counter() - start))
    if all(c.status == "pass" for c in claims):
        status = "pass"
    elif any(c.status == "fail" for c in claims):
        status = "fail"
    else:
        status = "inconclusive"
    return VerificationReport(
        case_id=case_id,
        status=status,
        claims=claims,
        config_digest=cfg.digest(),
        runtime_ms=elapsed,
    )


def run_all(config: Optional[LabConfig] = None) -> list:
    """Run every case, ordered by case id."""
    return [run_case(cid, config) for cid in case_ids()]
