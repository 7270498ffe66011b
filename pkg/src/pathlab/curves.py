"""Parametric curves, constructive reparametrization, and equivalence checks.

``reparametrize`` recovers the parameter transform phi with
gamma(t) = eta(phi(t)) one grid row at a time: pick the target component
with the largest derivative magnitude at the warm-started parameter, solve
that single component equation by bracketed root finding, verify the full
point residual, and record phi'(t) as the component derivative quotient.
Curves that are closed, self-coincident, or fail to share a trace are
rejected with TracesDifferError; that is how the same-trace-but-inequivalent
pairs surface.

Row computation is sequential by construction (warm starts); distinct curve
pairs are independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import GeometryError, PreconditionError, TracesDifferError, UnknownEntryError
from .intervals import Interval, as_interval

__all__ = [
    "ParametricCurve",
    "ReparamRow",
    "ReparamTable",
    "ComponentDerivativeVerdict",
    "ArclengthReport",
    "reparametrize",
    "roundtrip_max_error",
    "injectivity_probe",
    "component_derivative_check",
    "arclength",
    "CURVES",
    "get_curve",
    "curve_ids",
]

_EPS = np.finfo(float).eps
_PHI_PRIME_FLOOR = 1e-12


@dataclass(frozen=True)
class ParametricCurve:
    """An n-component continuously differentiable curve on a compact interval.

    Components and their derivatives must accept numpy arrays.  Regularity
    (nonvanishing velocity) is checked by sampling at interior points; an
    isolated endpoint zero is tolerated so that reparametrizations with an
    endpoint-degenerate transform can still be analyzed.
    """

    id: str
    domain: Interval
    components: tuple
    derivatives: tuple

    def __post_init__(self):
        if len(self.components) != len(self.derivatives) or not self.components:
            raise PreconditionError("components and derivatives must align and be nonempty")
        if not (math.isfinite(self.domain.lo) and math.isfinite(self.domain.hi)):
            raise PreconditionError("curve domain must be compact")

    @property
    def dim(self) -> int:
        return len(self.components)

    def point(self, t):
        ts = np.asarray(t, dtype=float)
        return np.stack([np.asarray(c(ts), dtype=float) for c in self.components])

    def velocity(self, t):
        ts = np.asarray(t, dtype=float)
        return np.stack([np.asarray(d(ts), dtype=float) for d in self.derivatives])

    def min_interior_speed(self, grid: int = 1024):
        ts = np.linspace(self.domain.lo, self.domain.hi, grid)[1:-1]
        speed = np.sqrt(np.sum(self.velocity(ts) ** 2, axis=0))
        i = int(np.argmin(speed))
        return float(speed[i]), float(ts[i])


@dataclass(frozen=True)
class ReparamRow:
    t: float
    s: float
    phi_prime: float
    residual: float


@dataclass(frozen=True)
class ReparamTable:
    source_id: str
    target_id: str
    rows: tuple
    components: tuple          # selected target component per row
    warnings: tuple = field(default=())

    def s_values(self) -> np.ndarray:
        return np.array([r.s for r in self.rows])

    def t_values(self) -> np.ndarray:
        return np.array([r.t for r in self.rows])

    def phi_primes(self) -> np.ndarray:
        return np.array([r.phi_prime for r in self.rows])

    def max_residual(self) -> float:
        return max(r.residual for r in self.rows)


def _max_norm(vec: np.ndarray) -> float:
    return float(np.max(np.abs(vec)))


def _solve_component(eta: ParametricCurve, j: int, target: float, s_start: float,
                     step_hint: float) -> float:
    """Solve eta_j(s) = target near s_start by expanding-bracket Brent."""
    comp = eta.components[j]

    def g(u):
        return float(comp(u)) - target

    g0 = g(s_start)
    if abs(g0) <= 4.0 * _EPS * (1.0 + abs(target)):
        return s_start
    c, d = eta.domain.lo, eta.domain.hi
    w = max(4.0 * abs(step_hint), 1e-3 * (d - c), 1e-12)
    while w <= 2.0 * (d - c):
        lo = max(c, s_start - w)
        hi = min(d, s_start + w)
        glo, ghi = g(lo), g(hi)
        if glo == 0.0:
            return lo
        if ghi == 0.0:
            return hi
        if glo * ghi < 0.0:
            return brentq(g, lo, hi, xtol=1e-300, rtol=4.0 * _EPS, maxiter=200)
        if lo == c and hi == d:
            break
        w *= 2.0
    # one whole-domain attempt, then accept a machine-precision endpoint root
    glo, ghi = g(c), g(d)
    if glo * ghi < 0.0:
        return brentq(g, c, d, xtol=1e-300, rtol=4.0 * _EPS, maxiter=200)
    tol_end = 64.0 * _EPS * (1.0 + abs(target))
    ends = sorted((c, d), key=lambda u: abs(u - s_start))
    for u in ends:
        if abs(g(u)) <= tol_end:
            return u
    raise GeometryError(
        f"no bracket for component {j} of {eta.id} near s={s_start!r} (target {target!r})"
    )


def reparametrize(
    gamma: ParametricCurve,
    eta: ParametricCurve,
    grid: int = 201,
    tol: float = 1e-8,
    at: Optional[Sequence[float]] = None,
    probe_grid: int = 512,
    check_injectivity: bool = True,
) -> ReparamTable:
    """Recover the parameter transform phi with gamma = eta o phi.

    Rows are produced at ``grid`` uniform source parameters (or at the
    explicit increasing parameters ``at``).  Raises TracesDifferError when
    either curve is self-coincident at probe resolution, the endpoints fail
    to match, a row residual exceeds ``tol``, or the target interval is not
    fully covered.  Rows where the selected target component derivative sits
    below the 1e-12 floor get phi' filled from differences of the s column
    and a warning, never a silent zero.
    """
    if gamma.dim != eta.dim:
        raise PreconditionError("curves must have equal dimension")
    if tol <= 0.0:
        raise PreconditionError("tol must be positive")
    if at is None:
        if grid < 2:
            raise PreconditionError("grid must be >= 2")
        ts = np.linspace(gamma.domain.lo, gamma.domain.hi, grid)
    else:
        ts = np.asarray(at, dtype=float)
        if ts.size < 2 or not np.all(np.diff(ts) > 0.0):
            raise PreconditionError("'at' must be strictly increasing with >= 2 points")
        for t in (ts[0], ts[-1]):
            if not gamma.domain.contains(float(t)):
                raise PreconditionError("'at' parameters must lie in the source domain")

    warnings = []
    if check_injectivity:
        for crv in (gamma, eta):
            sep = crv.domain.length / 8.0
            pairs = injectivity_probe(crv, probe_grid, sep, tol=1e-9)
            if pairs:
                t1, t2 = pairs[0]
                raise TracesDifferError(
                    f"curve {crv.id} is not one-to-one at probe resolution: "
                    f"points at t={t1:.6g} and t={t2:.6g} coincide"
                )

    for crv in (gamma, eta):
        speed, where = crv.min_interior_speed()
        if speed == 0.0:
            raise GeometryError(f"curve {crv.id} has vanishing velocity at t={where!r}")
        if speed < 1e-9:
            warnings.append(f"{crv.id}: interior speed {speed:.3g} at t={where:.6g}")

    # orientation seeding: the first source point must match exactly one
    # target endpoint (both matching would mean closed curves, out of scope)
    start = gamma.point(ts[0])
    seed_tol = max(1e-9, 10.0 * tol)
    d_lo = _max_norm(start - eta.point(eta.domain.lo))
    d_hi = _max_norm(start - eta.point(eta.domain.hi))
    match_lo, match_hi = d_lo <= seed_tol, d_hi <= seed_tol
    full_span = at is None
    if full_span:
        if match_lo and match_hi:
            raise TracesDifferError(
                f"{gamma.id} start matches both endpoints of {eta.id}; "
                "closed target curves are out of scope"
            )
        if not (match_lo or match_hi):
            raise TracesDifferError(
                f"{gamma.id} start matches neither endpoint of {eta.id} "
                f"(offsets {d_lo:.3g}, {d_hi:.3g})"
            )
        s = eta.domain.lo if match_lo else eta.domain.hi
    else:
        # partial grids (round-trip resolution) warm-start from the nearer end
        s = eta.domain.lo if d_lo <= d_hi else eta.domain.hi

    rows = []
    comps = []
    step_hint = eta.domain.length / max(len(ts), 2)
    degenerate = []
    for i, t in enumerate(np.asarray(ts, dtype=float)):
        pt = gamma.point(t)
        vel = eta.velocity(s)
        j = int(np.argmax(np.abs(vel)))
        s_new = _solve_component(eta, j, float(pt[j]), s, step_hint)
        residual = _max_norm(pt - eta.point(s_new))
        if residual > tol:
            raise TracesDifferError(
                f"traces differ: residual {residual:.3g} > tol {tol:.3g} at t={float(t):.6g}"
            )
        dj_eta = float(eta.derivatives[j](s_new))
        dj_gamma = float(gamma.derivatives[j](t))
        if abs(dj_eta) > _PHI_PRIME_FLOOR:
            phi_prime = dj_gamma / dj_eta
        else:
            phi_prime = math.nan
        if not math.isfinite(phi_prime) or abs(phi_prime) <= _PHI_PRIME_FLOOR:
            phi_prime = math.nan
            degenerate.append(i)
        rows.append(ReparamRow(t=float(t), s=float(s_new), phi_prime=phi_prime,
                               residual=residual))
        comps.append(j)
        step_hint = abs(s_new - s) if i else step_hint
        s = s_new

    svals = np.array([r.s for r in rows])
    tvals = np.array([r.t for r in rows])
    ds = np.diff(svals)
    if not (np.all(ds > 0.0) or np.all(ds < 0.0)):
        raise TracesDifferError("recovered parameter column is not strictly monotone")

    if degenerate:
        # fill phi' at derivative-degenerate rows from the s column slope
        for i in degenerate:
            k = i + 1 if i + 1 < len(rows) else i - 1
            fd = (svals[k] - svals[i]) / (tvals[k] - tvals[i])
            rows[i] = ReparamRow(t=rows[i].t, s=rows[i].s, phi_prime=fd,
                                 residual=rows[i].residual)
        warnings.append(
            f"phi' at rows {degenerate} filled from s-column differences "
            "(selected component derivative below floor)"
        )

    phis = np.array([r.phi_prime for r in rows])
    if not (np.all(phis > 0.0) or np.all(phis < 0.0)):
        raise TracesDifferError("phi' changes sign across rows")
    small = np.nonzero(np.abs(phis) < _PHI_PRIME_FLOOR)[0]
    if small.size:
        warnings.append(f"|phi'| below {_PHI_PRIME_FLOOR:g} at rows {small.tolist()}")

    if full_span:
        other_end = eta.domain.hi if match_lo else eta.domain.lo
        cover_tol = max(seed_tol, 100.0 * tol) * (1.0 + eta.domain.length)
        if abs(rows[-1].s - other_end) > cover_tol:
            raise TracesDifferError(
                f"target interval not covered: final s={rows[-1].s!r} misses "
                f"endpoint {other_end!r}"
            )

    return ReparamTable(
        source_id=gamma.id,
        target_id=eta.id,
        rows=tuple(rows),
        components=tuple(comps),
        warnings=tuple(warnings),
    )


def roundtrip_max_error(gamma: ParametricCurve, eta: ParametricCurve,
                        table: ReparamTable, tol: float = 1e-8) -> float:
    """Max |psi(phi(t)) - t| where psi is the reverse transform resolved at
    exactly the s values of ``table`` (the equivalence-relation symmetry)."""
    svals = table.s_values()
    order = svals.argsort()
    back = reparametrize(eta, gamma, at=svals[order], tol=tol, check_injectivity=False)
    t_back = back.s_values()
    t_want = table.t_values()[order]
    return float(np.max(np.abs(t_back - t_want)))


# ---------------------------------------------------------------------------
# injectivity probe
# ---------------------------------------------------------------------------


def injectivity_probe(
    curve: ParametricCurve,
    grid: int,
    separation: float,
    tol: float = 1e-9,
    max_pairs: int = 128,
) -> list:
    """Parameter pairs (t1, t2), |t1 - t2| >= separation, with near-coincident
    curve points (distance <= tol after local refinement).

    Empty list means no violation found at this resolution.  Candidates are
    collected on a uniform grid, then each is polished by a bounded 1-d
    minimization of the squared distance in t2 with t1 held fixed.
    """
    if grid < 2:
        raise PreconditionError("grid must be >= 2")
    if separation <= 0.0:
        raise PreconditionError("separation must be positive")
    a, b = curve.domain.lo, curve.domain.hi
    ts = np.linspace(a, b, grid)
    pts = curve.point(ts)                      # (dim, grid)
    speed = np.sqrt(np.sum(curve.velocity(ts) ** 2, axis=0))
    vmax = float(np.max(speed))
    h = (b - a) / (grid - 1)
    coarse = max(tol, 2.0 * vmax * h)

    found = []
    last_t2_for_i: dict = {}
    chunk = 512
    for i0 in range(0, grid, chunk):
        block = pts[:, i0 : i0 + chunk]        # (dim, m)
        d2 = np.sum((block[:, :, None] - pts[:, None, :]) ** 2, axis=0)
        ii, jj = np.nonzero(d2 <= coarse * coarse)
        for bi, j in zip(ii, jj):
            i = i0 + bi
            if j <= i or ts[j] - ts[i] < separation:
                continue
            prev = last_t2_for_i.get(i)
            if prev is not None and abs(ts[j] - prev) < 4.0 * h:
                continue
            p1 = pts[:, i]
            lo, hi = max(a, ts[j] - 2.0 * h), min(b, ts[j] + 2.0 * h)

            def d2_of(u):
                return float(np.sum((curve.point(u) - p1) ** 2))

            res = minimize_scalar(d2_of, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-13})
            # bounded minimization stalls on boundary minima; check the ends too
            t2, best = float(res.x), float(res.fun)
            for u in (lo, hi):
                du = d2_of(u)
                if du < best:
                    t2, best = u, du
            dist = math.sqrt(max(best, 0.0))
            if dist <= tol and t2 - ts[i] >= separation:
                found.append((float(ts[i]), t2))
                last_t2_for_i[i] = t2
                if len(found) >= max_pairs:
                    return found
    return found


# ---------------------------------------------------------------------------
# selected-component derivative transfer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentDerivativeVerdict:
    checked: int
    violations: tuple
    passed: bool


def component_derivative_check(gamma: ParametricCurve, eta: ParametricCurve,
                               table: ReparamTable, threshold: float = 1e-8
                               ) -> ComponentDerivativeVerdict:
    """At every table row: a nonvanishing selected target-component derivative
    must transfer to a nonvanishing source-component derivative."""
    violations = []
    for row, j in zip(table.rows, table.components):
        dj_eta = float(eta.derivatives[j](row.s))
        if abs(dj_eta) > threshold:
            dj_gamma = float(gamma.derivatives[j](row.t))
            if not abs(dj_gamma) > 0.0:
                violations.append((row.t, row.s, j, dj_eta))
    return ComponentDerivativeVerdict(
        checked=len(table.rows), violations=tuple(violations), passed=not violations
    )


# ---------------------------------------------------------------------------
# polygonal arclength lower bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArclengthReport:
    lower_bound: float      # polygonal length at the requested grid
    diverging: bool
    lengths: tuple          # lengths across nested grid doublings
    grids: tuple


def _polygonal_length(curve: ParametricCurve, n: int) -> float:
    a, b = curve.domain.lo, curve.domain.hi
    total = 0.0
    chunk = 1_000_000
    start = 0
    prev_pt = None
    while start < n - 1:
        stop = min(start + chunk, n - 1)
        ts = a + (b - a) * (np.arange(start, stop + 1) / (n - 1))
        pts = curve.point(ts)
        if prev_pt is not None:
            pts = np.concatenate([prev_pt[:, None], pts], axis=1)
        seg = np.sqrt(np.sum(np.diff(pts, axis=1) ** 2, axis=0))
        total += float(np.sum(seg))
        prev_pt = pts[:, -1].copy()
        start = stop
    return total


def arclength(curve: ParametricCurve, grid: int, doublings: int = 3,
              growth_factor: float = 1.25) -> ArclengthReport:
    """Polygonal length on the grid: a certified lower bound of the true length.

    The grid is refined by midpoint insertion (n -> 2n-1), which keeps the
    bound monotone nondecreasing; the diverging flag is set when every
    refinement grows the bound by at least ``growth_factor``.
    """
    if grid < 2:
        raise PreconditionError("grid must be >= 2")
    lengths = []
    grids = []
    n = grid
    for _ in range(doublings + 1):
        lengths.append(_polygonal_length(curve, n))
        grids.append(n)
        n = 2 * n - 1
    diverging = all(
        lengths[i + 1] >= growth_factor * lengths[i] for i in range(len(lengths) - 1)
    )
    return ArclengthReport(
        lower_bound=lengths[0],
        diverging=diverging,
        lengths=tuple(lengths),
        grids=tuple(grids),
    )


# ---------------------------------------------------------------------------
# named curves exposed through the CLI
# ---------------------------------------------------------------------------


def _circle(curve_id: str, span: float) -> ParametricCurve:
    return ParametricCurve(
        id=curve_id,
        domain=Interval(0.0, span),
        components=(np.cos, np.sin),
        derivatives=(lambda t: -np.sin(t), np.cos),
    )


def _osc_graph() -> ParametricCurve:
    def f(t):
        t = np.asarray(t, dtype=float)
        return t * t * np.sin(1.0 / (t * t))

    def df(t):
        t = np.asarray(t, dtype=float)
        return 2.0 * t * np.sin(1.0 / (t * t)) - (2.0 / t) * np.cos(1.0 / (t * t))

    return ParametricCurve(
        id="osc-graph",
        domain=Interval(1e-3, 1.0),
        components=(lambda t: np.asarray(t, dtype=float) + 0.0, f),
        derivatives=(lambda t: np.ones_like(np.asarray(t, dtype=float)), df),
    )


CURVES = {
    "quarter-circle": _circle("quarter-circle", math.pi / 2.0),
    "quarter-circle-sq": ParametricCurve(
        id="quarter-circle-sq",
        domain=Interval(0.0, math.sqrt(math.pi / 2.0)),
        components=(lambda s: np.cos(np.asarray(s, dtype=float) ** 2),
                    lambda s: np.sin(np.asarray(s, dtype=float) ** 2)),
        derivatives=(lambda s: -2.0 * np.asarray(s, dtype=float)
                     * np.sin(np.asarray(s, dtype=float) ** 2),
                     lambda s: 2.0 * np.asarray(s, dtype=float)
                     * np.cos(np.asarray(s, dtype=float) ** 2)),
    ),
    "circle": _circle("circle", 2.0 * math.pi),
    "circle-overwound": _circle("circle-overwound", 3.0 * math.pi),
    "diagonal-segment": ParametricCurve(
        id="diagonal-segment",
        domain=Interval(0.0, 1.0),
        components=(lambda t: np.asarray(t, dtype=float) + 0.0,
                    lambda t: np.asarray(t, dtype=float) + 0.0),
        derivatives=(lambda t: np.ones_like(np.asarray(t, dtype=float)),
                     lambda t: np.ones_like(np.asarray(t, dtype=float))),
    ),
    "figure-eight": ParametricCurve(
        id="figure-eight",
        domain=Interval(0.0, 2.0 * math.pi),
        components=(lambda t: np.sin(2.0 * np.asarray(t, dtype=float)), np.sin),
        derivatives=(lambda t: 2.0 * np.cos(2.0 * np.asarray(t, dtype=float)), np.cos),
    ),
    "osc-graph": _osc_graph(),
}


def get_curve(curve_id: str) -> ParametricCurve:
    try:
        return CURVES[curve_id]
    except KeyError:
        raise UnknownEntryError(curve_id) from None


def curve_ids() -> list:
    return sorted(CURVES)
