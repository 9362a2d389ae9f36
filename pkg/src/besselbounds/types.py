"""Shared value types: evaluation points, certified intervals, scaled Bessel values."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EvalPoint:
    """An (nu, x) argument pair with its floor/fractional decomposition.

    Both coordinates must be finite and non-negative.  The floor convention
    is exact: at integer inputs the fractional part is exactly 0 (no epsilon
    nudging), so regime splits that compare floors behave predictably on
    integer grids.
    """

    nu: float
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.nu) and math.isfinite(self.x)):
            raise ValueError(f"EvalPoint requires finite coordinates, got nu={self.nu}, x={self.x}")
        if self.nu < 0 or self.x < 0:
            raise ValueError(f"EvalPoint requires nu >= 0 and x >= 0, got nu={self.nu}, x={self.x}")

    @property
    def nu_floor(self) -> int:
        return math.floor(self.nu)

    @property
    def nu_frac(self) -> float:
        return self.nu - math.floor(self.nu)

    @property
    def x_floor(self) -> int:
        return math.floor(self.x)

    @property
    def x_frac(self) -> float:
        return self.x - math.floor(self.x)


@dataclass(frozen=True)
class Interval:
    """A certified [lower, upper] pair produced by every bound operation."""

    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("Interval endpoints must not be NaN")
        if self.lower > self.upper:
            raise ValueError(f"Interval requires lower <= upper, got [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, rel_slack: float = 0.0, abs_slack: float = 0.0) -> bool:
        """True if value lies in the interval, padded by the given slacks.

        The relative slack scales with the largest magnitude among the value
        and both endpoints, so containment checks stay meaningful for
        quantities spanning hundreds of orders of magnitude.
        """
        pad = abs_slack + rel_slack * max(abs(value), abs(self.lower), abs(self.upper))
        return self.lower - pad <= value <= self.upper + pad


@dataclass(frozen=True)
class ScaledBessel:
    """The quantity exp(-x) I_nu(x), always finite, carried with its natural log.

    ``value`` lies in [0, 1] for nu >= 0, x >= 0; it is 1 exactly at
    (nu=0, x=0) and 0 exactly at (nu>0, x=0).  ``value`` may underflow to 0
    in double precision while ``log_value`` stays finite; -inf is allowed
    only for the exact-zero case.
    """

    value: float
    log_value: float

    def __post_init__(self):
        if math.isnan(self.value) or math.isnan(self.log_value):
            raise ValueError("ScaledBessel fields must not be NaN")
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"scaled Bessel value must lie in [0, 1], got {self.value}")

    @classmethod
    def from_log(cls, log_value: float) -> "ScaledBessel":
        # Clamp +O(eps) rounding overshoot; the true quantity never exceeds 1.
        lv = min(log_value, 0.0)
        return cls(math.exp(lv) if lv > -math.inf else 0.0, lv)


@dataclass(frozen=True)
class TruncationCertificate:
    """Term count plus a rigorous bound on the tail discarded by a truncated sum.

    ``tail_bound`` is guaranteed <= ``requested_tol``; its units (absolute or
    relative to the returned value) are documented by the operation that
    issues the certificate.
    """

    terms_used: int
    tail_bound: float
    requested_tol: float

    def __post_init__(self):
        if self.terms_used < 0:
            raise ValueError("terms_used must be >= 0")
        if self.requested_tol <= 0:
            raise ValueError("requested_tol must be > 0")
        if not 0.0 <= self.tail_bound <= self.requested_tol:
            raise ValueError(
                f"tail_bound {self.tail_bound} outside [0, requested_tol={self.requested_tol}]")


@dataclass(frozen=True)
class SkellamParams:
    """Rate pair (lambda1, lambda2) of the two Poisson components.

    The derived Bessel argument is x = 2 sqrt(lambda1 * lambda2).
    """

    lambda1: float
    lambda2: float

    def __post_init__(self):
        for name, lam in (("lambda1", self.lambda1), ("lambda2", self.lambda2)):
            if not (math.isfinite(lam) and lam > 0):
                raise ValueError(f"{name} must be finite and > 0, got {lam}")

    @property
    def x(self) -> float:
        return 2.0 * math.sqrt(self.lambda1 * self.lambda2)

    @property
    def symmetric(self) -> bool:
        return self.lambda1 == self.lambda2
