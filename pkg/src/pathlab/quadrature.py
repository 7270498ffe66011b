"""Adaptive integration plus the oscillatory improper-integral constructions.

Two integral families live here:

* ``integrate`` is a general adaptive-bisection Simpson integrator with an
  embedded error estimate and a hard subdivision cap (non-convergence is
  reported, never silently wrong).

* ``onesided_osc_value`` evaluates F(x) = integral of |cos(1/t)|^(1/|t|)
  from 0 to x (and a steeper variant with exponent 1/t^2 and a 1/sqrt|t|
  factor) through the substitution u = 1/t.  The transformed integrand
  |cos u|^(u^p) / u^q is summed period by period over [k*pi, (k+1)*pi].
  Every period concentrates its mass in Gaussian-like peaks of width
  ~ (k*pi)^(-p/2) at the period ends, so each period is integrated on a
  peak-scaled grid (vectorized across periods, cached), and the truncated
  tail is covered by the rigorous bound

      integral over period k  <=  sqrt(2*pi) * (k*pi)^(-p/2 - q),

  which follows from  ln cos(d) <= -d^2/2  on [0, pi/2).

All computations are pure and deterministic; period sums always run in
ascending k so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, PreconditionError
from .intervals import as_interval

__all__ = [
    "QuadratureResult",
    "TailBoundCheck",
    "ImproperTailReport",
    "integrate",
    "osc_integrand",
    "osc_integrand_steep",
    "osc_u_integrand",
    "onesided_osc_value",
    "alpha_constant",
    "compute_n0",
    "peak_tail_bound",
    "tail_bound",
    "improper_convergence_x_sin_x3",
    "unboundedness_probe",
    "window_max",
]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool


# ---------------------------------------------------------------------------
# general adaptive Simpson
# ---------------------------------------------------------------------------

MAX_DEPTH = 60


def _simpson(a, b, fa, fm, fb):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def integrate(f, interval, tol: float = 1e-9, max_depth: int = MAX_DEPTH) -> QuadratureResult:
    """Adaptive Simpson quadrature of ``f`` over ``interval``.

    Panels are accepted when the two-level Simpson discrepancy is within the
    local error budget; accepted panels use the Richardson-corrected value.
    Panels still failing at ``max_depth`` levels are kept with their residual
    folded into the error estimate and the result is flagged non-converged.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    iv = as_interval(interval)
    a, b = float(iv.lo), float(iv.hi)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integrate requires a finite interval")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, True)

    def ev(x):
        y = float(f(x))
        if not math.isfinite(y):
            raise NumericError(f"integrand not finite at {x!r}")
        return y

    fa, fm, fb = ev(a), ev(0.5 * (a + b)), ev(b)
    evals = 3
    whole = _simpson(a, b, fa, fm, fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    parts = []
    err_parts = []
    cap_hit = False
    while stack:
        pa, pb, pfa, pfm, pfb, pwhole, ptol, depth = stack.pop()
        m = 0.5 * (pa + pb)
        lm = 0.5 * (pa + m)
        rm = 0.5 * (m + pb)
        flm, frm = ev(lm), ev(rm)
        evals += 2
        left = _simpson(pa, m, pfa, flm, pfm)
        right = _simpson(m, pb, pfm, frm, pfb)
        delta = left + right - pwhole
        if abs(delta) <= 15.0 * ptol or depth >= max_depth:
            parts.append(left + right + delta / 15.0)
            err_parts.append(abs(delta) / 15.0)
            if depth >= max_depth and abs(delta) > 15.0 * ptol:
                cap_hit = True
        else:
            # push right first so the left half is processed next (ascending order)
            stack.append((m, pb, pfm, frm, pfb, right, 0.5 * ptol, depth + 1))
            stack.append((pa, m, pfa, flm, pfm, left, 0.5 * ptol, depth + 1))
    value = math.fsum(parts)
    err = math.fsum(err_parts)
    return QuadratureResult(value, err, evals, (not cap_hit) and err <= tol)


# ---------------------------------------------------------------------------
# oscillatory integrands, t-space and u-space
# ---------------------------------------------------------------------------


def _pow_abs_cos(base_abs, exponent):
    """|c|^e as exp(e*log|c|), exact 0 at c == 0, array or scalar."""
    c = np.abs(base_abs)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        out = np.exp(exponent * np.log(c))
    out = np.where(c == 0.0, 0.0, out)
    if np.ndim(out) == 0:
        return float(out)
    return out


def osc_integrand(t):
    """|cos(1/t)|^(1/|t|) for t != 0, 0 at t = 0.  Accepts scalars or arrays.

    Computed as exp(log|cos(1/t)| / |t|); underflow flushes to 0 and the
    cos-zero points return exactly 0, so the value is always in [0, 1].
    """
    t_arr = np.asarray(t, dtype=float)
    at = np.abs(t_arr)
    inv = 1.0 / np.where(at > 0.0, at, 1.0)
    val = _pow_abs_cos(np.cos(inv), inv)
    val = np.where(at == 0.0, 0.0, val)
    if np.ndim(t) == 0:
        return float(val)
    return val


def osc_integrand_steep(t):
    """|cos(1/t)|^(1/t^2) / sqrt(|t|) for t != 0, 0 at t = 0 (limit)."""
    t_arr = np.asarray(t, dtype=float)
    at = np.abs(t_arr)
    safe = np.where(at > 0.0, at, 1.0)
    inv = 1.0 / safe
    val = _pow_abs_cos(np.cos(inv), inv * inv) / np.sqrt(safe)
    val = np.where(at == 0.0, 0.0, val)
    if np.ndim(t) == 0:
        return float(val)
    return val


def osc_u_integrand(u, p: float = 1.0, q: float = 2.0):
    """|cos u|^(u^p) / u^q, the u = 1/t transform of the t-space integrands."""
    u_arr = np.asarray(u, dtype=float)
    val = _pow_abs_cos(np.cos(u_arr), u_arr**p) / u_arr**q
    if np.ndim(u) == 0:
        return float(val)
    return val


# ---------------------------------------------------------------------------
# period table: vectorized peak-scaled integration of [k*pi, (k+1)*pi]
# ---------------------------------------------------------------------------

_PERIOD_NODES = 513  # odd, so both the fine rule and the half-density rule are Simpson
_V_SPAN = 40.0       # peak-width units covered by the per-period grid
_CHUNK = 2048

# (p, q) -> {k: (value, err_estimate)}
_period_cache: dict = {}


def _simpson_rows(g: np.ndarray, dv: float) -> np.ndarray:
    return (dv / 3.0) * (
        g[:, 0] + g[:, -1] + 4.0 * g[:, 1:-1:2].sum(axis=1) + 2.0 * g[:, 2:-2:2].sum(axis=1)
    )


def _compute_periods(ks: np.ndarray, p: float, q: float):
    """Integrals of |cos u|^(u^p)/u^q over [k*pi, (k+1)*pi] for an array of k.

    Each period is mapped to peak-width units v = delta / w with
    w = (k*pi)^(-p/2), where delta is the distance to the nearest period end;
    the two half-periods are integrated on one uniform v-grid by composite
    Simpson, with the half-density rule supplying the error estimate.
    """
    a = ks * math.pi
    b = (ks + 1.0) * math.pi
    w = a ** (-p / 2.0)
    span = np.minimum(_V_SPAN, (math.pi / 2.0) / w)
    v = np.linspace(0.0, 1.0, _PERIOD_NODES)[None, :]
    delta = v * (span * w)[:, None]
    with np.errstate(divide="ignore", over="ignore", under="ignore", invalid="ignore"):
        logcos = np.log(np.cos(delta))
        g = np.exp((a[:, None] + delta) ** p * logcos) / (a[:, None] + delta) ** q
        g += np.exp((b[:, None] - delta) ** p * logcos) / (b[:, None] - delta) ** q
    g = np.nan_to_num(g, nan=0.0, posinf=0.0, neginf=0.0)
    dv = span / (_PERIOD_NODES - 1)
    fine = _simpson_rows(g, 1.0) * dv
    coarse = _simpson_rows(g[:, ::2], 2.0) * dv
    vals = fine * w
    errs = np.abs(fine - coarse) / 15.0 * w
    return vals, errs


def _ensure_periods(k_lo: int, k_hi: int, p: float, q: float) -> int:
    """Fill the period cache for k in [k_lo, k_hi); returns fresh evaluations."""
    cache = _period_cache.setdefault((p, q), {})
    missing = [k for k in range(k_lo, k_hi) if k not in cache]
    fresh = 0
    for i in range(0, len(missing), _CHUNK):
        chunk = np.array(missing[i : i + _CHUNK], dtype=float)
        vals, errs = _compute_periods(chunk, p, q)
        for k, val, err in zip(missing[i : i + _CHUNK], vals, errs):
            cache[k] = (float(val), float(err))
        fresh += chunk.size * _PERIOD_NODES * 2
    return fresh


def peak_tail_bound(k_start: int, p: float = 1.0, q: float = 2.0) -> float:
    """Rigorous bound on the integral of |cos u|^(u^p)/u^q over [k_start*pi, inf).

    Uses ln cos(d) <= -d^2/2 on [0, pi/2), giving per period k the bound
    sqrt(2*pi) * (k*pi)^(-p/2-q); the sum over k >= K is bounded by the first
    term plus the integral comparison K^(1-s)/(s-1).
    """
    if k_start < 1:
        raise PreconditionError("tail bound needs k_start >= 1")
    s = p / 2.0 + q
    return math.sqrt(2.0 * math.pi) * math.pi ** (-s) * (
        k_start ** (-s) + k_start ** (1.0 - s) / (s - 1.0)
    )


def _k_for_tail(target: float, p: float, q: float) -> int:
    """Smallest K with peak_tail_bound(K) <= target (tail bound is decreasing)."""
    k = 1
    while peak_tail_bound(k, p, q) > target and k < 1 << 40:
        k *= 2
    lo, hi = k // 2, k
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if peak_tail_bound(mid, p, q) <= target:
            hi = mid
        else:
            lo = mid
    return hi if peak_tail_bound(hi, p, q) <= target else hi + 1


def onesided_osc_value(
    x: float,
    tol: float = 1e-7,
    steep: bool = False,
    max_periods: int = 250_000,
) -> QuadratureResult:
    """F(x) = integral from 0 to x of the one-sided oscillatory integrand.

    ``steep=False`` integrates |cos(1/t)|^(1/|t|); ``steep=True`` integrates
    |cos(1/t)|^(1/t^2)/sqrt(|t|).  Odd extension handles x < 0.  After the
    substitution u = 1/t the improper integral over [1/|x|, inf) is summed
    period by period (ascending k) until both the rigorous peak tail bound
    falls below tol/2 and the per-period bound falls below tol/10; the
    reported error estimate covers quadrature residue plus the omitted tail.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    if x == 0.0 or abs(x) > 1.0:
        raise DomainError("onesided_osc_value needs 0 < |x| <= 1")
    p, q = (2.0, 1.5) if steep else (1.0, 2.0)
    s = p / 2.0 + q
    sign = -1.0 if x < 0.0 else 1.0
    u0 = 1.0 / abs(x)

    k0 = int(math.ceil(u0 / math.pi))
    while k0 * math.pi < u0:
        k0 += 1
    while k0 >= 2 and (k0 - 1) * math.pi >= u0:
        k0 -= 1
    # now (k0-1)*pi < u0 <= k0*pi; whole periods start at k = k0

    evals = 0
    if k0 * math.pi > u0:
        partial = integrate(lambda u: osc_u_integrand(u, p, q), (u0, k0 * math.pi), tol=tol / 4.0)
        evals += partial.evaluations
    else:
        partial = QuadratureResult(0.0, 0.0, 0, True)

    k_tail = _k_for_tail(tol / 2.0, p, q)
    per_term = 10.0 * math.sqrt(2.0 * math.pi) * math.pi ** (-s)
    k_per = int(math.ceil((per_term / tol) ** (1.0 / s)))
    k_stop = max(k_tail, k_per, k0)
    capped = False
    if k_stop - k0 > max_periods:
        k_stop = k0 + max_periods
        capped = True

    evals += _ensure_periods(k0, k_stop, p, q)
    cache = _period_cache.setdefault((p, q), {})
    vals = []
    errs = []
    for k in range(k0, k_stop):
        v, e = cache[k]
        vals.append(v)
        errs.append(e)
    tail = peak_tail_bound(k_stop, p, q)
    value = sign * (partial.value + math.fsum(vals))
    err = partial.abs_error_estimate + math.fsum(errs) + tail
    converged = (not capped) and partial.converged and err <= tol
    return QuadratureResult(value, err, evals, converged)


# ---------------------------------------------------------------------------
# tail-bound chain for the one-sided oscillation integral
# ---------------------------------------------------------------------------


def alpha_constant() -> float:
    """(1 + exp(-pi^3/4)) / 2, the geometric ratio of the mid-period bound."""
    return 0.5 * (1.0 + math.exp(-math.pi**3 / 4.0))


def _mid_period_ratio(k):
    """(1 - pi^2/(4*sqrt(k)))^(sqrt(k)*pi), the mid-period decay factor."""
    rk = np.sqrt(np.asarray(k, dtype=float))
    return (1.0 - math.pi**2 / (4.0 * rk)) ** (rk * math.pi)


def compute_n0(scan_hi: int = 20_000) -> int:
    """Smallest N0 >= 16 with the mid-period ratio <= alpha for all k >= N0.

    The ratio is verified to be nondecreasing on the scanned range and its
    limit exp(-pi^3/4) lies below alpha, so a scan certificate suffices.
    """
    alpha = alpha_constant()
    ks = np.arange(16, scan_hi + 1)
    g = _mid_period_ratio(ks)
    if not np.all(np.diff(g) >= -1e-15):
        raise NumericError("mid-period ratio not monotone on scan range")
    if not math.exp(-math.pi**3 / 4.0) < alpha:
        raise NumericError("mid-period limit not below alpha")
    bad = np.nonzero(g > alpha)[0]
    return 16 if bad.size == 0 else int(ks[bad[-1]] + 1)


@dataclass(frozen=True)
class TailBoundCheck:
    N: int
    numeric_value: float
    analytic_bound: float
    alpha: float

    @property
    def holds(self) -> bool:
        return self.numeric_value <= self.analytic_bound


def tail_bound(N: int, tol: float = 1e-7) -> TailBoundCheck:
    """Check integral 0..1/((N+1)*pi) of |cos(1/t)|^(1/t) against the closed bound.

    The analytic bound is (8/(5*pi)) * N^(-5/4) + 2*alpha^sqrt(N) / (pi*log(1/alpha)).
    Requires N >= N0 (computed, not assumed).
    """
    n0 = compute_n0()
    if N < n0:
        raise PreconditionError(f"tail bound requires N >= N0 = {n0}, got {N}")
    alpha = alpha_constant()
    bound = (8.0 / (5.0 * math.pi)) * N ** (-1.25) + 2.0 * alpha ** math.sqrt(N) / (
        math.pi * math.log(1.0 / alpha)
    )
    numeric = onesided_osc_value(1.0 / ((N + 1) * math.pi), tol=tol)
    if not numeric.converged:
        raise NumericError("tail-bound integral did not converge")
    return TailBoundCheck(N=N, numeric_value=numeric.value, analytic_bound=bound, alpha=alpha)


# ---------------------------------------------------------------------------
# x*sin(x^3): improper convergence via zero-partitioned alternating segments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImproperTailReport:
    cauchy_ok: bool
    partial_values: list
    segment_values: list
    spread: float
    alternating: bool
    decreasing: bool


def improper_convergence_x_sin_x3(tol: float = 1e-3, segments: int = 1200) -> ImproperTailReport:
    """Convergence evidence for the integral of sin(y) / (3*y^(1/3)).

    This is the y = t^3 substitution of x*sin(x^3); segment k runs between the
    consecutive integrand zeros k*pi and (k+1)*pi.  The report records that
    segment signs alternate, magnitudes decrease monotonically, and the
    once-averaged partial sums (the alternating-series midpoint, whose
    distance to the limit is at most the first omitted magnitude gap) settle
    within ``tol``.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    segs = []
    for k in range(1, segments + 1):
        r = integrate(lambda y: math.sin(y) / (3.0 * y ** (1.0 / 3.0)),
                      (k * math.pi, (k + 1) * math.pi), tol=1e-12)
        segs.append(r.value)
    partials = list(np.cumsum(segs))
    alternating = all(segs[i] * segs[i + 1] < 0.0 for i in range(len(segs) - 1))
    mags = np.abs(np.array(segs))
    decreasing = bool(np.all(np.diff(mags) < 0.0))
    averaged = 0.5 * (np.array(partials[:-1]) + np.array(partials[1:]))
    window = max(2, len(averaged) // 4)
    spread = float(np.max(np.abs(np.diff(averaged[-window:]))))
    cauchy_ok = alternating and decreasing and spread < tol
    return ImproperTailReport(
        cauchy_ok=cauchy_ok,
        partial_values=partials,
        segment_values=segs,
        spread=spread,
        alternating=alternating,
        decreasing=decreasing,
    )


# ---------------------------------------------------------------------------
# sampled magnitude probes
# ---------------------------------------------------------------------------


def _entry_eval_many(entry, xs: np.ndarray) -> np.ndarray:
    if hasattr(entry, "eval_many"):
        return np.asarray(entry.eval_many(xs), dtype=float)
    f = getattr(entry, "eval", entry)
    return np.array([float(f(x)) for x in xs])


def unboundedness_probe(entry, r_list, grid: int = 200_000):
    """Sampled max of |f| on [0, R] for each R; a lower bound for sup|f|.

    Besides a uniform grid the probe targets the crest points x with
    x^3 = pi/2 + 2*pi*m, where x*sin(x^3) attains |f| close to x.  True
    unboundedness is not decidable by sampling; callers compare against a
    threshold and must report the result as evidence at this resolution.
    """
    out = []
    for r in r_list:
        r = float(r)
        xs = np.linspace(0.0, r, grid)
        m_hi = int((r**3 - math.pi / 2.0) / (2.0 * math.pi)) if r**3 > math.pi / 2.0 else -1
        if m_hi >= 0:
            crest = np.cbrt(math.pi / 2.0 + 2.0 * math.pi * np.arange(0, m_hi + 1))
            xs = np.concatenate([xs, crest[crest <= r]])
        vals = np.abs(_entry_eval_many(entry, xs))
        out.append((r, float(np.max(vals))))
    return out


def window_max(entry, lo: float, hi: float, grid: int = 200_000) -> float:
    """Sampled max of |f| on [lo, hi]."""
    xs = np.linspace(float(lo), float(hi), grid)
    return float(np.max(np.abs(_entry_eval_many(entry, xs))))
