"""Closed/open interval type used for evaluator domains and scan ranges."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Interval:
    """A real interval with independently open or closed endpoints.

    Infinite endpoints are allowed and must be open.  A degenerate interval
    (lo == hi) is only permitted when both endpoints are closed.
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("degenerate interval must be closed on both ends")
        if math.isinf(self.lo) and self.lo_closed:
            raise ValueError("infinite endpoint must be open")
        if math.isinf(self.hi) and self.hi_closed:
            raise ValueError("infinite endpoint must be open")

    def contains(self, x: float) -> bool:
        lo_ok = x >= self.lo if self.lo_closed else x > self.lo
        hi_ok = x <= self.hi if self.hi_closed else x < self.hi
        return bool(lo_ok and hi_ok)

    def require(self, x: float, what: str = "point") -> None:
        if not self.contains(x):
            raise DomainError(f"{what} {x!r} outside {self}")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def __str__(self):
        l, r = "[" if self.lo_closed else "(", "]" if self.hi_closed else ")"
        return f"{l}{self.lo}, {self.hi}{r}"


REALS = Interval(-math.inf, math.inf, lo_closed=False, hi_closed=False)


def as_interval(obj) -> Interval:
    """Coerce an Interval or a (lo, hi) pair into an Interval."""
    if isinstance(obj, Interval):
        return obj
    lo, hi = obj
    return Interval(float(lo), float(hi))
