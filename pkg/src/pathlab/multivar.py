"""Directional-minimum traps and Hessian classification in the plane.

A strict minimum of f along every line through a point does not make the
point a minimum; quadratic paths can still slip below.  These checks make
that testable: a direction sweep certifies per-line strict minima, the path
refutation searches parabola families for lower values, and the Hessian
classifier bands eigenvalues around zero so semidefinite cases are detected
honestly.  Note on the aggregate second-derivative inequality: nonnegative
directional curvature in every direction yields positive SEMI-definiteness,
never definiteness, and the classifier implements the semidefinite reading.

Sign questions for the oscillating-curve trap run in exponent space (see
catalog.osc_trap_sign), because both of its exponential terms underflow to
zero over most of the interesting region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import BivariateEntry, osc_trap_curve, osc_trap_sign
from .errors import NumericError, PreconditionError

__all__ = [
    "DirectionVerdict",
    "PathWitness",
    "HessianReport",
    "ExtremumVerdict",
    "CurveTrapVerdict",
    "line_restriction_test",
    "direction_sweep",
    "path_refutation",
    "hessian_classify",
    "extremum_report",
    "curve_restriction_check",
]

_EPS = np.finfo(float).eps


def _eval2_many(entry: BivariateEntry, xs, ys) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if getattr(entry, "vectorized", False):
        return np.asarray(entry.eval(xs, ys), dtype=float)
    return np.array([float(entry.eval(float(x), float(y))) for x, y in zip(xs, ys)])


@dataclass(frozen=True)
class DirectionVerdict:
    direction: tuple
    passed: bool
    inner_radius: float            # radius at which all samples sat above g(0)
    witness: Optional[tuple]       # (t, g(t)) violating strictness, if failed


def line_restriction_test(
    entry: BivariateEntry,
    xi,
    v,
    radius: float = 1.0,
    samples: int = 129,
    halvings: int = 20,
) -> DirectionVerdict:
    """Does g(t) = f(xi + t*v) have a strict local minimum at t = 0?

    Samples g on [-r, r] and halves r (up to ``halvings`` times) until every
    sampled t != 0 satisfies g(t) > g(0); passing records the certified inner
    radius, giving up returns the first violating sample of the last radius.
    """
    if radius <= 0.0 or samples < 5:
        raise PreconditionError("radius must be positive and samples >= 5")
    v = np.asarray(v, dtype=float)
    norm = float(np.sqrt(np.sum(v * v)))
    if norm == 0.0:
        raise PreconditionError("direction must be nonzero")
    v = v / norm
    x0, y0 = float(xi[0]), float(xi[1])
    g0 = float(entry.eval(x0, y0))

    r = float(radius)
    witness = None
    for _ in range(halvings + 1):
        t = np.linspace(-r, r, samples)
        t = t[t != 0.0]
        vals = _eval2_many(entry, x0 + t * v[0], y0 + t * v[1])
        bad = np.nonzero(~(vals > g0))[0]
        if bad.size == 0:
            return DirectionVerdict(direction=(float(v[0]), float(v[1])), passed=True,
                                    inner_radius=r, witness=None)
        witness = (float(t[bad[0]]), float(vals[bad[0]]))
        r *= 0.5
    return DirectionVerdict(direction=(float(v[0]), float(v[1])), passed=False,
                            inner_radius=0.0, witness=witness)


@dataclass(frozen=True)
class PathWitness:
    point: tuple
    value: float
    a: float
    b: float
    t: float


@dataclass(frozen=True)
class HessianReport:
    matrix: tuple                 # ((h11, h12), (h12, h22))
    eigenvalues: tuple
    hessian_class: str


@dataclass(frozen=True)
class ExtremumVerdict:
    point: tuple
    directions_tested: int
    line_test_passes: int
    failed_directions: tuple = ()
    refutation_witness: Optional[PathWitness] = None
    hessian: Optional[tuple] = None
    hessian_class: Optional[str] = None


def direction_sweep(entry: BivariateEntry, xi, count: int = 360,
                    radius: float = 1.0) -> ExtremumVerdict:
    """Run the line-restriction test over ``count`` equally spaced directions."""
    if count < 4:
        raise PreconditionError("count must be >= 4")
    passes = 0
    failed = []
    for i in range(count):
        theta = 2.0 * math.pi * i / count
        verdict = line_restriction_test(entry, xi, (math.cos(theta), math.sin(theta)),
                                        radius=radius)
        if verdict.passed:
            passes += 1
        else:
            failed.append(verdict.direction)
    return ExtremumVerdict(
        point=(float(xi[0]), float(xi[1])),
        directions_tested=count,
        line_test_passes=passes,
        failed_directions=tuple(failed),
    )


def path_refutation(
    entry: BivariateEntry,
    xi,
    a_values=(1.0, 2.0, 3.0, -1.0, -2.0, -3.0),
    b_values=(1.0, 2.0, 3.0),
    radius: float = 1e-2,
    t_count: int = 60,
) -> Optional[PathWitness]:
    """Search quadratic paths (a*t, b*t^2) from xi for values below f(xi).

    Paths are tried in the deterministic (a, b) grid order with t descending
    geometrically from radius; the first strict drop inside the radius ball
    wins.  Returns None when no path undercuts f(xi).
    """
    if not a_values or not b_values:
        raise PreconditionError("parameter grid must be nonempty")
    x0, y0 = float(xi[0]), float(xi[1])
    f0 = float(entry.eval(x0, y0))
    ts = radius * 0.5 ** np.arange(1, t_count + 1)
    for a in a_values:
        for b in b_values:
            xs = x0 + a * ts
            ys = y0 + b * ts * ts
            inside = np.hypot(xs - x0, ys - y0) <= radius
            if not inside.any():
                continue
            vals = _eval2_many(entry, xs[inside], ys[inside])
            hit = np.nonzero(vals < f0)[0]
            if hit.size:
                k = hit[0]
                tsel = float(ts[inside][k])
                return PathWitness(
                    point=(float(xs[inside][k]), float(ys[inside][k])),
                    value=float(vals[k]),
                    a=float(a),
                    b=float(b),
                    t=tsel,
                )
    return None


def hessian_classify(entry: BivariateEntry, xi, step: Optional[float] = None) -> HessianReport:
    """Central-difference Hessian at xi with banded eigenvalue classification.

    Step h = eps^(1/3) * (1 + |xi|) balances the second-difference stencil;
    eigenvalues within 1e-5 * max(1, ||H||) of zero count as zero, so the
    exactly-singular cases classify as semidefinite rather than flipping on
    rounding noise.
    """
    x0, y0 = float(xi[0]), float(xi[1])
    h = step if step is not None else _EPS ** (1.0 / 3.0) * (1.0 + math.hypot(x0, y0))
    f0 = float(entry.eval(x0, y0))
    fxp = float(entry.eval(x0 + h, y0))
    fxm = float(entry.eval(x0 - h, y0))
    fyp = float(entry.eval(x0, y0 + h))
    fym = float(entry.eval(x0, y0 - h))
    fpp = float(entry.eval(x0 + h, y0 + h))
    fpm = float(entry.eval(x0 + h, y0 - h))
    fmp = float(entry.eval(x0 - h, y0 + h))
    fmm = float(entry.eval(x0 - h, y0 - h))
    h11 = (fxp - 2.0 * f0 + fxm) / (h * h)
    h22 = (fyp - 2.0 * f0 + fym) / (h * h)
    h12 = (fpp - fpm - fmp + fmm) / (4.0 * h * h)
    for val in (h11, h22, h12):
        if not math.isfinite(val):
            raise NumericError("Hessian stencil did not converge (non-finite entry)")

    mean = 0.5 * (h11 + h22)
    r = math.hypot(0.5 * (h11 - h22), h12)
    lam = (mean - r, mean + r)
    scale = max(1.0, abs(lam[0]), abs(lam[1]))
    band = 1e-5 * scale
    signs = tuple(0 if abs(v) <= band else (1 if v > 0.0 else -1) for v in lam)
    if signs == (1, 1):
        kind = "positive-definite"
    elif signs == (-1, -1):
        kind = "negative-definite"
    elif -1 in signs and 1 in signs:
        kind = "indefinite"
    elif 1 in signs:
        kind = "positive-semidefinite"
    elif -1 in signs:
        kind = "negative-semidefinite"
    else:
        kind = "zero"
    return HessianReport(matrix=((h11, h12), (h12, h22)), eigenvalues=lam,
                         hessian_class=kind)


def extremum_report(entry: BivariateEntry, xi, count: int = 360, radius: float = 1.0,
                    path_radius: float = 1e-2) -> ExtremumVerdict:
    """Sweep directions, search refuting parabola paths, classify the Hessian."""
    sweep = direction_sweep(entry, xi, count=count, radius=radius)
    witness = path_refutation(entry, xi, radius=path_radius)
    hess = hessian_classify(entry, xi)
    return ExtremumVerdict(
        point=sweep.point,
        directions_tested=sweep.directions_tested,
        line_test_passes=sweep.line_test_passes,
        failed_directions=sweep.failed_directions,
        refutation_witness=witness,
        hessian=hess.matrix,
        hessian_class=hess.hessian_class,
    )


# ---------------------------------------------------------------------------
# oscillating-curve restriction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveTrapVerdict:
    on_curve_samples: int
    on_curve_all_positive: bool
    annuli: tuple          # (scale, above_point, below_point, above_sign, below_sign)
    passed: bool


def curve_restriction_check(samples: int = 1000, annuli: int = 8,
                            x_min: float = 1e-3, x_max: float = 1.0) -> CurveTrapVerdict:
    """Verify the oscillating-curve trap: strictly positive along the curve
    y = sin(1/x), yet both signs occur off-curve in every dyadic annulus.

    On-curve positivity and the off-curve signs are decided by
    osc_trap_sign's exponent comparison; plain evaluation would underflow to
    an uninformative 0 for |x| below about 0.19.  The scan range obeys the
    |x| >= 1e-3 precision cutoff of sin(1/x).
    """
    if samples < 2 or annuli < 1:
        raise PreconditionError("need samples >= 2 and annuli >= 1")
    if x_min < 1e-3:
        raise PreconditionError("scan range must respect the |x| >= 1e-3 cutoff")
    half = max(1, samples // 2)
    mags = np.geomspace(x_min, x_max, half)
    xs = np.concatenate([-mags[::-1], mags])
    on_curve_ok = all(osc_trap_sign(float(x), osc_trap_curve(float(x))) == 1 for x in xs)

    rows = []
    all_found = True
    for k in range(1, annuli + 1):
        x = 1.5 * 2.0 ** (-k)        # midpoint of the annulus [2^-k, 2^-k+1]
        ys = osc_trap_curve(x)
        above = (x, ys + x * x)
        below = (x, ys - 2.0 * x * x)
        sa = osc_trap_sign(*above)
        sb = osc_trap_sign(*below)
        rows.append((2.0 ** (-k), above, below, sa, sb))
        if not (sa == 1 and sb == -1):
            all_found = False
    return CurveTrapVerdict(
        on_curve_samples=len(xs),
        on_curve_all_positive=on_curve_ok,
        annuli=tuple(rows),
        passed=on_curve_ok and all_found,
    )
