"""Finite-difference derivative estimation and derivative-pathology scans.

Estimates are central differences Richardson-extrapolated over step halvings
(one-sided near domain boundaries); scans evaluate the analytic derivative
when an entry carries one, otherwise vectorized finite differences.  Witness
selection is always first-in-grid-order, so identical inputs produce
identical reports.  Unboundedness is never claimed: scans report the sampled
sup and threshold witnesses only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NumericError, PreconditionError
from .intervals import Interval, as_interval

__all__ = [
    "DerivativeEstimate",
    "ScanReport",
    "QuotientBounds",
    "InverseDerivativeCheck",
    "TangentSideVerdict",
    "ConvexityVerdict",
    "default_step",
    "derivative",
    "difference_quotient_bounds",
    "sign_change_scan",
    "inverse_derivative_check",
    "tangent_side_test",
    "convexity_scan",
]

_EPS = np.finfo(float).eps


def _fn(f) -> Callable[[float], float]:
    return f.eval if hasattr(f, "eval") else f


def _domain_of(f, domain) -> Optional[Interval]:
    if domain is not None:
        return as_interval(domain)
    return getattr(f, "domain", None)


def default_step(x: float, scale: float = 1.0) -> float:
    """Truncation/rounding balance point: max(1e-6, sqrt(eps)*(1+|x|))."""
    return scale * max(1e-6, math.sqrt(_EPS) * (1.0 + abs(x)))


@dataclass(frozen=True)
class DerivativeEstimate:
    point: float
    value: float
    step: float
    order: int                # which derivative: 1 or 2
    error_indicator: float    # spread of the extrapolation table


def _richardson(seq, p0: int, dp: int):
    """Extrapolate estimates computed at steps h, h/2, h/4, ...

    ``p0`` is the leading error order and ``dp`` the gap between successive
    error terms (central differences: 2 and 2; one-sided: 1 and 1).
    Returns (value, spread-of-table indicator).
    """
    vals = list(seq)
    diag = [vals[0]]
    for j in range(1, len(vals)):
        factor = 2.0 ** (p0 + (j - 1) * dp)
        for i in range(len(vals) - 1, j - 1, -1):
            vals[i] = (factor * vals[i] - vals[i - 1]) / (factor - 1.0)
        diag.append(vals[-1] if j == len(vals) - 1 else vals[j])
    value = vals[-1]
    if len(vals) == 1:
        return value, 0.0
    spread = abs(vals[-1] - vals[-2]) + abs(diag[-1] - diag[-2]) if len(diag) > 1 else 0.0
    return value, spread


def derivative(
    f,
    x: float,
    scheme: str = "auto",
    step: Optional[float] = None,
    levels: int = 3,
    order: int = 1,
    domain=None,
    fd_step_scale: float = 1.0,
) -> DerivativeEstimate:
    """Finite-difference derivative of ``f`` at ``x``.

    ``scheme`` is "central", "forward", "backward", or "auto" (central unless
    the symmetric neighbourhood leaves the domain, then one-sided toward the
    interior).  ``levels=1`` returns the raw quotient at ``step`` without
    extrapolation; higher levels Richardson-extrapolate over step halvings.
    ``order=2`` estimates the second derivative (central only).
    """
    if levels < 1:
        raise PreconditionError("levels must be >= 1")
    if order not in (1, 2):
        raise PreconditionError("order must be 1 or 2")
    fn = _fn(f)
    dom = _domain_of(f, domain)
    x = float(x)
    if step is not None:
        h = float(step)
    elif order == 2:
        # second differences divide by h^2: balance needs a larger step
        h = fd_step_scale * max(1e-4, _EPS**0.25 * (1.0 + abs(x)))
    else:
        h = default_step(x, fd_step_scale)
    if h <= 0.0 or x + h == x:
        raise NumericError(f"step underflow at {x!r} (h={h!r})")

    if order == 2:
        scheme = "central"
    if scheme == "auto":
        scheme = "central"
        if dom is not None:
            left_ok = dom.contains(x - h)
            right_ok = dom.contains(x + h)
            if not (left_ok and right_ok):
                if right_ok:
                    scheme = "forward"
                elif left_ok:
                    scheme = "backward"
                else:
                    raise NumericError(f"no admissible step at {x!r} near domain boundary")
    if scheme not in ("central", "forward", "backward"):
        raise PreconditionError(f"unknown scheme {scheme!r}")

    if dom is not None:
        probes = {
            "central": (x - h, x + h),
            "forward": (x + h,),
            "backward": (x - h,),
        }[scheme]
        for pt in probes:
            if not dom.contains(pt):
                raise NumericError(f"finite-difference probe {pt!r} outside domain")

    # denominators use the realized step fl(x+h) - fl(x-h), not the nominal h
    if order == 2:
        f0 = fn(x)

        def quot(hh):
            xp, xm = x + hh, x - hh
            half = 0.5 * (xp - xm)
            return (fn(xp) - 2.0 * f0 + fn(xm)) / (half * half)

        p0, dp = 2, 2
    elif scheme == "central":

        def quot(hh):
            xp, xm = x + hh, x - hh
            return (fn(xp) - fn(xm)) / (xp - xm)

        p0, dp = 2, 2
    elif scheme == "forward":
        f0 = fn(x)

        def quot(hh):
            xp = x + hh
            return (fn(xp) - f0) / (xp - x)

        p0, dp = 1, 1
    else:
        f0 = fn(x)

        def quot(hh):
            xm = x - hh
            return (f0 - fn(xm)) / (x - xm)

        p0, dp = 1, 1

    seq = [quot(h / 2.0**i) for i in range(levels)]
    for v in seq:
        if not math.isfinite(v):
            raise NumericError(f"difference quotient not finite at {x!r}")
    value, spread = _richardson(seq, p0, dp)
    spread += 4.0 * _EPS * (1.0 + abs(value))
    return DerivativeEstimate(point=x, value=value, step=h, order=order, error_indicator=spread)


# ---------------------------------------------------------------------------
# one-sided quotient bound of the staircase function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientBounds:
    q: float
    lower: float
    upper: float


def difference_quotient_bounds(n: int, tau: float) -> QuotientBounds:
    """Difference quotient (f(x) - f(0))/x of the staircase at x = 1/(n+1) + tau.

    q = (1 + tau*(n+1)/2) / (1 + tau*(n+1)) with guaranteed enclosure
    1/(1 + 1/n) <= q <= 1 for 0 <= tau < 1/(n*(n+1)).
    """
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    if not (0.0 <= tau < 1.0 / (n * (n + 1.0))):
        raise PreconditionError(f"tau={tau!r} outside [0, 1/(n(n+1)))")
    t = tau * (n + 1.0)
    q = (1.0 + 0.5 * t) / (1.0 + t)
    return QuotientBounds(q=q, lower=n / (n + 1.0), upper=1.0)


# ---------------------------------------------------------------------------
# derivative sign / threshold scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    interval: Interval
    positive_witness: Optional[tuple]
    negative_witness: Optional[tuple]
    sup_abs_seen: float
    samples: int
    threshold: float = 0.0
    note: str = ""


def _derivative_samples(entry, xs: np.ndarray, fd_step_scale: float) -> np.ndarray:
    if getattr(entry, "analytic_derivative", None) is not None:
        return entry.deriv_many(xs)
    fn = _fn(entry)
    h = np.maximum(1e-6, math.sqrt(_EPS) * (1.0 + np.abs(xs))) * fd_step_scale
    if hasattr(entry, "eval_many"):
        return (entry.eval_many(xs + h) - entry.eval_many(xs - h)) / (2.0 * h)
    up = np.array([fn(v) for v in xs + h])
    dn = np.array([fn(v) for v in xs - h])
    return (up - dn) / (2.0 * h)


def sign_change_scan(
    entry,
    interval,
    grid: int,
    threshold: float = 0.0,
    fd_step_scale: float = 1.0,
) -> ScanReport:
    """Scan f' on a uniform grid for sign (or threshold-exceeding) witnesses.

    Records the first x with f'(x) > threshold, the first with
    f'(x) < -threshold, and sup|f'| over the grid.  The scan interval must
    stay outside the entry's |x| cutoff, where 1/x argument reduction stops
    being meaningful; the cutoff is recorded in the report note.
    """
    if grid < 2:
        raise PreconditionError("grid must be >= 2")
    if threshold < 0.0:
        raise PreconditionError("threshold must be >= 0")
    iv = as_interval(interval)
    cutoff = getattr(entry, "scan_cutoff", 0.0)
    if cutoff > 0.0 and iv.lo < cutoff and iv.hi > -cutoff:
        if not (iv.hi <= -cutoff or iv.lo >= cutoff):
            raise DomainError(
                f"scan interval {iv} enters the |x| < {cutoff} cutoff region"
            )
    dom = getattr(entry, "domain", None)
    if dom is not None and not (dom.contains(iv.lo) and dom.contains(iv.hi)):
        raise DomainError(f"scan interval {iv} not inside entry domain {dom}")

    xs = np.linspace(iv.lo, iv.hi, grid)
    d = _derivative_samples(entry, xs, fd_step_scale)
    finite = np.isfinite(d)
    sup = float(np.max(np.abs(d[finite]))) if finite.any() else math.nan

    pos_idx = np.nonzero(finite & (d > threshold))[0]
    neg_idx = np.nonzero(finite & (d < -threshold))[0]
    pos = (float(xs[pos_idx[0]]), float(d[pos_idx[0]])) if pos_idx.size else None
    neg = (float(xs[neg_idx[0]]), float(d[neg_idx[0]])) if neg_idx.size else None
    used = "analytic" if getattr(entry, "analytic_derivative", None) is not None else "fd"
    return ScanReport(
        interval=iv,
        positive_witness=pos,
        negative_witness=neg,
        sup_abs_seen=sup,
        samples=grid,
        threshold=threshold,
        note=f"derivative={used}; cutoff=|x|>={cutoff:g}",
    )


# ---------------------------------------------------------------------------
# inverse-function derivative check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InverseDerivativeCheck:
    x0: float
    y0: float
    direct: float       # finite-difference derivative of the inverted map at y0
    via_formula: float  # 1 / f'(x0)


def inverse_derivative_check(
    f,
    interval,
    x0: float,
    f_prime=None,
    monotone_grid: int = 512,
    fd_step_scale: float = 1.0,
) -> InverseDerivativeCheck:
    """Compare the derivative of the numerically inverted function at f(x0)
    with 1/f'(x0).

    ``f`` must be strictly monotone on ``interval`` (verified by a sample
    scan) with f'(x0) != 0; inversion is by bracketed root finding over the
    interval, and the inverse derivative is a Richardson-extrapolated central
    difference in y.
    """
    fn = _fn(f)
    iv = as_interval(interval) if interval is not None else _domain_of(f, None)
    if iv is None:
        raise PreconditionError("an interval is required")
    if not iv.contains(x0):
        raise DomainError(f"x0={x0!r} outside {iv}")

    xs = np.linspace(iv.lo, iv.hi, monotone_grid)
    ys = np.array([fn(float(v)) for v in xs])
    diffs = np.diff(ys)
    if not (np.all(diffs > 0.0) or np.all(diffs < 0.0)):
        raise PreconditionError("function is not strictly monotone on the interval")

    fp0 = float(f_prime(x0)) if f_prime is not None else derivative(
        f, x0, domain=iv, fd_step_scale=fd_step_scale
    ).value
    if abs(fp0) < 1e-10 * (1.0 + abs(x0)):
        raise PreconditionError(f"derivative at x0 vanishes (f'(x0)={fp0!r})")
    via_formula = 1.0 / fp0

    y0 = fn(x0)
    ya, yb = float(ys[0]), float(ys[-1])
    lo, hi = (ya, yb) if ya < yb else (yb, ya)

    def inverse(y: float) -> float:
        try:
            return brentq(lambda t: fn(t) - y, iv.lo, iv.hi, xtol=1e-300, rtol=4.0 * _EPS,
                          maxiter=200)
        except (ValueError, RuntimeError) as exc:
            raise NumericError(f"inversion failed at y={y!r}: {exc}") from exc

    h = math.sqrt(_EPS) * (1.0 + abs(y0)) * fd_step_scale
    room = min(y0 - lo, hi - y0)
    if room > 0.0:
        h = min(h, 0.25 * room)
    if h <= 0.0 or y0 + h == y0:
        raise NumericError("no room for a difference step in the image interval")
    seq = [(inverse(y0 + hh) - inverse(y0 - hh)) / (2.0 * hh) for hh in (h, h / 2, h / 4)]
    direct, _ = _richardson(seq, 2, 2)
    if not (math.isfinite(direct) and math.isfinite(via_formula)):
        raise NumericError("non-finite inverse derivative")
    return InverseDerivativeCheck(x0=x0, y0=y0, direct=direct, via_formula=via_formula)


# ---------------------------------------------------------------------------
# tangent crossing and convexity scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TangentSideVerdict:
    x0: float
    slope: float
    is_torsion_point: bool
    right_sign: int   # +1 above tangent, -1 below, 0 mixed/inconclusive
    left_sign: int
    right_witness: Optional[tuple]
    left_witness: Optional[tuple]
    band_scale: float


def _side_sign(devs: np.ndarray, bands: np.ndarray):
    """Classify one side: +1 if all samples sit at or above the tangent with
    at least one strictly above the noise band, -1 mirrored, 0 otherwise."""
    up = devs > bands
    dn = devs < -bands
    if not dn.any() and up.any():
        return 1, int(np.nonzero(up)[0][0])
    if not up.any() and dn.any():
        return -1, int(np.nonzero(dn)[0][0])
    return 0, None


def tangent_side_test(
    entry,
    x0: float,
    radius: float = 0.5,
    samples: int = 256,
    fd_step_scale: float = 1.0,
) -> TangentSideVerdict:
    """Does the graph cross its tangent at x0 (above on one side, below on
    the other)?

    The tangent slope is a Richardson finite-difference estimate; samples are
    log-spaced on both sides and compared against a noise band proportional
    to the slope's error indicator times the distance from x0, so slope
    uncertainty cannot manufacture a sign.
    """
    if radius <= 0.0 or samples < 8:
        raise PreconditionError("radius must be positive and samples >= 8")
    fn = _fn(entry)
    dom = _domain_of(entry, None)
    est = derivative(entry, x0, fd_step_scale=fd_step_scale)
    f0 = fn(x0)
    band_scale = 4.0 * est.error_indicator + 64.0 * _EPS * (1.0 + abs(est.value))

    offs = np.geomspace(1e-3 * radius, radius, samples // 2)
    sides = {}
    for label, sgn in (("right", 1.0), ("left", -1.0)):
        xs = x0 + sgn * offs
        if dom is not None:
            xs = xs[[dom.contains(float(v)) for v in xs]]
        if hasattr(entry, "eval_many"):
            vals = entry.eval_many(xs)
        else:
            vals = np.array([fn(float(v)) for v in xs])
        devs = vals - (f0 + est.value * (xs - x0))
        bands = band_scale * np.abs(xs - x0) + 1e-12 * (1.0 + abs(f0))
        sign, idx = _side_sign(devs, bands)
        witness = (float(xs[idx]), float(devs[idx])) if idx is not None else None
        sides[label] = (sign, witness)

    right_sign, right_witness = sides["right"]
    left_sign, left_witness = sides["left"]
    is_torsion = right_sign != 0 and left_sign == -right_sign
    return TangentSideVerdict(
        x0=x0,
        slope=est.value,
        is_torsion_point=is_torsion,
        right_sign=right_sign,
        left_sign=left_sign,
        right_witness=right_witness,
        left_witness=left_witness,
        band_scale=band_scale,
    )


@dataclass(frozen=True)
class ConvexityVerdict:
    interval: Interval
    both_signs: bool
    positive_witness: Optional[tuple]
    negative_witness: Optional[tuple]
    samples: int


def convexity_scan(entry, interval, grid: int) -> ConvexityVerdict:
    """Second differences on a uniform grid: do both signs occur?

    Both signs present means the function is neither convex nor concave on
    the interval; witnesses are first-in-grid-order (x, second difference).
    """
    if grid < 4:
        raise PreconditionError("grid must be >= 4")
    iv = as_interval(interval)
    xs = np.linspace(iv.lo, iv.hi, grid)
    if hasattr(entry, "eval_many"):
        ys = entry.eval_many(xs)
    else:
        fn = _fn(entry)
        ys = np.array([fn(float(v)) for v in xs])
    d2 = ys[:-2] - 2.0 * ys[1:-1] + ys[2:]
    band = 64.0 * _EPS * float(np.max(np.abs(ys))) if ys.size else 0.0
    pos_idx = np.nonzero(d2 > band)[0]
    neg_idx = np.nonzero(d2 < -band)[0]
    pos = (float(xs[pos_idx[0] + 1]), float(d2[pos_idx[0]])) if pos_idx.size else None
    neg = (float(xs[neg_idx[0] + 1]), float(d2[neg_idx[0]])) if neg_idx.size else None
    return ConvexityVerdict(
        interval=iv,
        both_signs=pos is not None and neg is not None,
        positive_witness=pos,
        negative_witness=neg,
        samples=grid,
    )
