"""Catalog of pathological functions: exact, side-effect-free evaluators.

Each entry carries its domain, an evaluator, optional analytic derivative,
and symmetry metadata.  Evaluators implement the defining formulas with
numerically safe rewrites (exp/log powering with exact-zero short circuits,
compensated products where an identity must hold to a few ulps, guarded
reciprocals near the underflow floor).  Entry ids are stable strings; the
registry is immutable after import.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, UnknownEntryError
from .intervals import REALS, Interval
from .quadrature import onesided_osc_value, osc_integrand, osc_integrand_steep

__all__ = [
    "CatalogEntry",
    "BivariateEntry",
    "REGISTRY",
    "get",
    "entry_ids",
    "evaluate",
    "evaluate2",
    "staircase",
    "staircase_gap_member",
    "rational_torsion",
    "make_inj_fail",
    "parabola_trap_value",
    "osc_trap_value",
    "osc_trap_sign",
    "osc_trap_curve",
]

# tiny-|x| floor below which 1/x, 1/x^2 formulas are replaced by their
# dominant term; far below every verified scan range (cutoff 1e-6)
_FORMULA_FLOOR = 1e-150


@dataclass(frozen=True)
class CatalogEntry:
    """A univariate catalog function with metadata.

    ``analytic_derivative`` (where present) is claimed on ``deriv_domain``
    and cross-checked against finite differences on ``fd_check_domain``;
    integral-defined entries skip the finite-difference check (each probe
    would cost a full quadrature) and are validated structurally instead.
    ``scan_cutoff`` is the |x| floor below which sin(1/x)-type argument
    reduction is no longer meaningful; scans must stay outside it.
    """

    id: str
    domain: Interval
    eval: Callable[[float], float]
    analytic_derivative: Optional[Callable[[float], float]] = None
    deriv_domain: Optional[Interval] = None
    odd_symmetric: bool = False
    params: dict = field(default_factory=dict)
    citation: str = ""
    vectorized: bool = True
    deriv_vectorized: bool = True
    scan_cutoff: float = 0.0
    fd_check_domain: Optional[Interval] = None

    def eval_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if self.vectorized:
            return np.asarray(self.eval(xs), dtype=float)
        return np.array([float(self.eval(float(x))) for x in xs])

    def deriv_many(self, xs) -> np.ndarray:
        if self.analytic_derivative is None:
            raise ValueError(f"entry {self.id} has no analytic derivative")
        xs = np.asarray(xs, dtype=float)
        if self.deriv_vectorized:
            return np.asarray(self.analytic_derivative(xs), dtype=float)
        return np.array([float(self.analytic_derivative(float(x))) for x in xs])


@dataclass(frozen=True)
class BivariateEntry:
    """A function of two real variables, total on the plane."""

    id: str
    eval: Callable[[float, float], float]
    gradient: Optional[Callable[[float, float], tuple]] = None
    citation: str = ""
    vectorized: bool = True


# ---------------------------------------------------------------------------
# staircase bijection with a discontinuous inverse at 0
# ---------------------------------------------------------------------------


def staircase(x):
    """Half-slope staircase on (-1, 1): odd, 0 at 0, and on each branch
    [1/(n+1), 1/n) equal to 1/(n+1) + (x - 1/(n+1))/2.

    Branch lookup starts from floor(1/x) and nudges the index until the
    float comparisons 1/(n+1) <= x < 1/n hold, so breakpoints that round
    across an integer cannot select the wrong branch.  Accepts scalars or
    arrays.
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(xs) >= 1.0) or np.any(~np.isfinite(xs)):
        raise DomainError("staircase is defined on (-1, 1) only")
    ax = np.abs(xs)
    out = np.zeros_like(ax)
    nz = ax > 0.0
    if np.any(nz):
        a = ax[nz]
        with np.errstate(over="ignore"):
            n = np.floor(1.0 / a)
        for _ in range(4):
            too_low = a < 1.0 / (n + 1.0)
            if np.any(too_low):
                n = np.where(too_low, n + 1.0, n)
            too_high = a >= 1.0 / n
            if np.any(too_high):
                n = np.where(too_high, n - 1.0, n)
            if not (np.any(too_low) or np.any(too_high)):
                break
        lo = 1.0 / (n + 1.0)
        out[nz] = lo + 0.5 * (a - lo)
    out = np.where(xs < 0.0, -out, out)
    return float(out[0]) if scalar else out


def staircase_gap_member(y: float) -> bool:
    """True iff y lies in some branch-image interval [1/(n+1), (2n+1)/(2n(n+1))).

    These lower-half sub-intervals of [1/(n+1), 1/n) are exactly the values
    the staircase covers on (0, 1); their right-open complements are covered
    only by the out-of-scope uncountable branch.
    """
    y = float(y)
    if not (0.0 < y < 1.0):
        raise DomainError("gap membership is defined for 0 < y < 1")
    n = math.floor(1.0 / y)
    for _ in range(4):
        if y < 1.0 / (n + 1.0):
            n += 1
        elif n >= 1 and y >= 1.0 / n:
            n -= 1
        else:
            break
    if n < 1:
        return False
    mid = (2.0 * n + 1.0) / (2.0 * n * (n + 1.0))
    return bool(1.0 / (n + 1.0) <= y < mid)


def rational_torsion(value):
    """Cube of an exact rational; the companion fifth-power branch off the
    rationals is not represented because rationality of a float carries no
    meaning.  Floats are rejected outright."""
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError("rational_torsion accepts exact rationals (int or Fraction) only")
    return Fraction(value) ** 3


# ---------------------------------------------------------------------------
# sin(1/x)-family evaluators (array-capable, guarded near the underflow floor)
# ---------------------------------------------------------------------------


def _masked_unary(x, small_value, formula):
    """Evaluate formula(x) where |x| is large enough for 1/x to be sane."""
    xs = np.asarray(x, dtype=float)
    ax = np.abs(xs)
    ok = ax >= _FORMULA_FLOOR
    safe = np.where(ok, xs, 1.0)
    with np.errstate(invalid="ignore"):
        val = np.where(ok, formula(safe), small_value(xs))
    if np.ndim(x) == 0:
        return float(val)
    return val


def make_inj_fail(alpha: float = 5.0) -> CatalogEntry:
    """x + alpha*x^2*sin(1/x^2): differentiable with slope 1 at 0, yet not
    one-to-one on any neighbourhood of 0 (derivative unbounded both ways)."""

    def f(x):
        return _masked_unary(
            x, lambda xs: xs,
            lambda s: s + alpha * s * s * np.sin(1.0 / (s * s)),
        )

    def df(x):
        return _masked_unary(
            x, lambda xs: np.ones_like(xs),
            lambda s: 1.0 + 2.0 * alpha * s * np.sin(1.0 / (s * s))
            - (2.0 * alpha / s) * np.cos(1.0 / (s * s)),
        )

    return CatalogEntry(
        id="inj-fail",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        params={"alpha": alpha},
        citation="Gelbaum & Olmsted, Counterexamples in Analysis, p. 37",
        scan_cutoff=1e-6,
        fd_check_domain=Interval(0.05, 2.0),
    )


def _inj_fail_caption(alpha: float = 5.0) -> CatalogEntry:
    def f(x):
        return _masked_unary(
            x, lambda xs: xs,
            lambda s: s + alpha * s * s * np.sin(1.0 / s),
        )

    def df(x):
        return _masked_unary(
            x, lambda xs: np.ones_like(xs),
            lambda s: 1.0 + 2.0 * alpha * s * np.sin(1.0 / s) - alpha * np.cos(1.0 / s),
        )

    return CatalogEntry(
        id="inj-fail-caption",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        params={"alpha": alpha},
        citation="sin(1/x) variant: bounded derivative, still sign-changing near 0",
        scan_cutoff=1e-6,
        fd_check_domain=Interval(0.05, 2.0),
    )


def _min_no_flank() -> CatalogEntry:
    def f(x):
        return _masked_unary(
            x, lambda xs: 2.0 * xs**4,
            lambda s: s**4 * (2.0 + np.sin(1.0 / s)),
        )

    def df(x):
        return _masked_unary(
            x, lambda xs: 8.0 * xs**3,
            lambda s: s * s * (8.0 * s + 4.0 * s * np.sin(1.0 / s) - np.cos(1.0 / s)),
        )

    return CatalogEntry(
        id="min-no-flank",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        citation="Gelbaum & Olmsted, Counterexamples in Analysis, p. 36",
        scan_cutoff=1e-6,
        fd_check_domain=Interval(0.05, 2.0),
    )


def _torsion_osc() -> CatalogEntry:
    # magnitude is computed on |x| and the sign applied afterwards, so the
    # odd symmetry f(-x) = -f(x) holds bit-exactly
    def f(x):
        def formula(s):
            a = np.abs(s)
            mag = a**3 + a * a * np.sin(1.0 / a) ** 2
            return np.where(s < 0.0, -mag, mag)
        return _masked_unary(x, lambda xs: xs**3, formula)

    def df(x):
        # derivative of an odd function is even; one formula in |x| covers both sides
        def formula(s):
            a = np.abs(s)
            return 3.0 * a * a + 2.0 * a * np.sin(1.0 / a) ** 2 - np.sin(2.0 / a)
        return _masked_unary(x, lambda xs: 3.0 * xs * xs, formula)

    return CatalogEntry(
        id="torsion-osc",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        odd_symmetric=True,
        citation="cubic with signed sin^2(1/x) ripple: crosses its tangent at 0 "
                 "but is neither convex nor concave on either side",
        scan_cutoff=1e-6,
        fd_check_domain=Interval(0.05, 2.0),
    )


def _decay_wild_deriv() -> CatalogEntry:
    def f(x):
        xs = np.asarray(x, dtype=float)
        safe = np.where(xs != 0.0, xs, 1.0)
        val = np.where(xs != 0.0, np.sin(safe**3) / safe, 0.0)
        return float(val) if np.ndim(x) == 0 else val

    def df(x):
        xs = np.asarray(x, dtype=float)
        safe = np.where(xs != 0.0, xs, 1.0)
        val = np.where(
            xs != 0.0,
            3.0 * safe * np.cos(safe**3) - np.sin(safe**3) / (safe * safe),
            0.0,
        )
        return float(val) if np.ndim(x) == 0 else val

    return CatalogEntry(
        id="decay-wild-deriv",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        citation="sin(x^3)/x: vanishes at infinity while its derivative does not",
        fd_check_domain=Interval(0.05, 10.0),
    )


def _improper_unbounded() -> CatalogEntry:
    def f(x):
        xs = np.asarray(x, dtype=float)
        val = xs * np.sin(xs**3)
        return float(val) if np.ndim(x) == 0 else val

    def df(x):
        xs = np.asarray(x, dtype=float)
        val = np.sin(xs**3) + 3.0 * xs**3 * np.cos(xs**3)
        return float(val) if np.ndim(x) == 0 else val

    return CatalogEntry(
        id="improper-unbounded",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        citation="x*sin(x^3): improperly integrable on [0, inf) yet unbounded",
        # above x ~ 5 the rounding of the cubed argument alone costs more
        # than 1e-6 in any difference quotient
        fd_check_domain=Interval(0.0, 4.0),
    )


def _staircase_entry() -> CatalogEntry:
    return CatalogEntry(
        id="inverse-counterexample",
        domain=Interval(-1.0, 1.0, lo_closed=False, hi_closed=False),
        eval=staircase,
        odd_symmetric=True,
        citation="piecewise-linear bijection with slope 1/2 branches; "
                 "differentiable at 0 with slope 1, inverse discontinuous at 0",
    )


def _onesided_osc(steep: bool) -> CatalogEntry:
    def f(x):
        x = float(x)
        if x == 0.0:
            return 0.0
        return onesided_osc_value(x, steep=steep).value

    return CatalogEntry(
        id="onesided-osc-unbounded" if steep else "onesided-osc",
        domain=Interval(-1.0, 1.0),
        eval=f,
        analytic_derivative=osc_integrand_steep if steep else osc_integrand,
        deriv_domain=Interval(-1.0, 1.0),
        odd_symmetric=True,
        citation="integral of |cos(1/t)|^(1/t^2)/sqrt|t|: derivative oscillates "
                 "above 0 and is unbounded near 0" if steep else
                 "integral of |cos(1/t)|^(1/|t|): derivative is 0 at 0 and "
                 "oscillates only above it",
        vectorized=False,
        scan_cutoff=1e-6,
        fd_check_domain=None,
    )


def _identity_entry() -> CatalogEntry:
    def f(x):
        xs = np.asarray(x, dtype=float)
        return float(xs) if np.ndim(x) == 0 else xs + 0.0

    def df(x):
        xs = np.asarray(x, dtype=float)
        val = np.ones_like(xs)
        return float(val) if np.ndim(x) == 0 else val

    return CatalogEntry(
        id="identity",
        domain=REALS,
        eval=f,
        analytic_derivative=df,
        deriv_domain=REALS,
        odd_symmetric=True,
        citation="identity map, smoke-test entry",
    )


# ---------------------------------------------------------------------------
# bivariate entries
# ---------------------------------------------------------------------------

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_prod(a, b):
    p = a * b
    a_hi = _SPLIT * a
    a_hi = a_hi - (a_hi - a)
    a_lo = a - a_hi
    b_hi = _SPLIT * b
    b_hi = b_hi - (b_hi - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def parabola_trap_value(x, y):
    """(5y - x^2)(y - x^2), compensated so float inputs give the exact real
    product to a few ulps (the closed-form path identities rely on this)."""
    x2, x2e = _two_prod(x, x)
    f5, f5e = _two_prod(5.0, y)
    a, ae = _two_sum(f5, -x2)
    ae = ae + f5e - x2e
    b, be = _two_sum(y, -x2)
    be = be - x2e
    p, pe = _two_prod(a, b)
    return p + (pe + a * be + ae * b)


def _parabola_trap_gradient(x, y):
    return (4.0 * x**3 - 12.0 * x * y, 10.0 * y - 6.0 * x * x)


def osc_trap_curve(x: float) -> float:
    """The oscillating reference curve y = sin(1/x), 0 at x = 0."""
    if x == 0.0:
        return 0.0
    return math.sin(1.0 / x)


def osc_trap_value(x: float, y: float) -> float:
    """Signed bump field around the curve y = sin(1/x) plus exp(-1/x^4).

    Positive above the curve, negative below it wherever the bump term
    dominates, exp(-1/x^4) on the curve, 0 on the axis x = 0.  Both
    exponentials underflow to 0 for |x| below about 0.19; sign questions in
    that region must go through osc_trap_sign.
    """
    x, y = float(x), float(y)
    if x == 0.0:
        return 0.0
    x2 = x * x
    x4 = x2 * x2
    if x4 == 0.0:
        return 0.0
    hump = math.exp(-1.0 / x4)
    d = y - math.sin(1.0 / x)
    d2 = d * d
    if d2 == 0.0:
        return hump
    g = math.copysign(math.exp(-1.0 / x2 - 1.0 / d2), d)
    return g + hump


def osc_trap_sign(x: float, y: float) -> int:
    """Sign of osc_trap_value decided in exponent space.

    f > 0 iff the point is above the curve, or below it with
    1/x^2 + 1/(y - sin(1/x))^2 > 1/x^4; comparing logarithms of the
    exponents makes the sign immune to double-precision underflow.
    """
    x, y = float(x), float(y)
    if x == 0.0:
        return 0
    d = y - math.sin(1.0 / x)
    if d > 0.0:
        return 1
    if d == 0.0:
        return 1
    lx = math.log(abs(x))
    hump_log = -4.0 * lx
    g_log = np.logaddexp(-2.0 * lx, -2.0 * math.log(abs(d)))
    if hump_log < g_log:
        return 1
    if hump_log > g_log:
        return -1
    return 0


def _parabola_trap() -> BivariateEntry:
    return BivariateEntry(
        id="parabola-trap",
        eval=parabola_trap_value,
        gradient=_parabola_trap_gradient,
        citation="Gelbaum & Olmsted, Counterexamples in Analysis, p. 122",
    )


def _osc_curve_trap() -> BivariateEntry:
    return BivariateEntry(
        id="osc-curve-trap",
        eval=osc_trap_value,
        citation="strict minimum along the curve (x, sin(1/x)) at the origin, "
                 "no local minimum at the origin",
        vectorized=False,
    )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def _build_registry():
    entries = [
        make_inj_fail(),
        _inj_fail_caption(),
        _staircase_entry(),
        _min_no_flank(),
        _torsion_osc(),
        _onesided_osc(steep=False),
        _onesided_osc(steep=True),
        _improper_unbounded(),
        _decay_wild_deriv(),
        _identity_entry(),
        _parabola_trap(),
        _osc_curve_trap(),
    ]
    return MappingProxyType({e.id: e for e in entries})


REGISTRY = _build_registry()


def get(entry_id: str):
    try:
        return REGISTRY[entry_id]
    except KeyError:
        raise UnknownEntryError(entry_id) from None


def entry_ids() -> list:
    return sorted(REGISTRY)


def evaluate(entry_id: str, x: float) -> float:
    """Evaluate a univariate entry at x, enforcing its domain."""
    entry = get(entry_id)
    if isinstance(entry, BivariateEntry):
        raise DomainError(f"entry {entry_id} is bivariate; use evaluate2")
    entry.domain.require(x)
    return float(entry.eval(float(x)))


def evaluate2(entry_id: str, x: float, y: float) -> float:
    """Evaluate a bivariate entry at (x, y)."""
    entry = get(entry_id)
    if not isinstance(entry, BivariateEntry):
        raise DomainError(f"entry {entry_id} is univariate; use evaluate")
    return float(entry.eval(float(x), float(y)))
