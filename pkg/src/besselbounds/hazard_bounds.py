"""Two-sided bounds on the hazard-type tail sum H(nu, x) = sum_{k>=1} I_{nu+k}(x)/I_nu(x).

Everything here is closed form.  The geometric bounds hold for every
nu, x >= 0 but are loose near nu = 0 (the lower bound stays order 1, the
upper grows like x).  The two-regime bounds, valid when
floor(nu) + 2 <= floor(x), capture the correct sqrt(x) growth near nu = 0 by
summing exponential ratio envelopes like a discrete Gaussian; a Gaussian
tail integral inequality turns that sum into the elementary expressions
below.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

from .ratio_bounds import ALPHA0
from .types import EvalPoint, Interval

logger = logging.getLogger(__name__)


class HazardRegime(enum.Enum):
    GEOMETRIC_ONLY = "geometric_only"   # floor(nu) + 2 > floor(x)
    TWO_REGIME = "two_regime"           # floor(nu) + 2 <= floor(x)


@dataclass(frozen=True)
class HazardBoundReport:
    point: EvalPoint
    interval: Interval
    regime: HazardRegime


def f_kernel(nu: float, x: float) -> float:
    """The kernel F(nu, x) = x / (nu + sqrt(nu^2 + x^2)).

    Strictly less than 1 whenever nu > 0; equals 1 iff nu = 0 and x > 0.
    Undefined at nu = x = 0.
    """
    if nu < 0 or x < 0:
        raise ValueError(f"f_kernel requires nu, x >= 0, got nu={nu}, x={x}")
    if nu == 0.0 and x == 0.0:
        raise ValueError("f_kernel is undefined at nu = x = 0")
    return x / (nu + math.hypot(nu, x))


def geometric_h_bounds(p: EvalPoint) -> Interval:
    """Geometric-series bounds, valid for all nu, x >= 0.

    lower = F(nu+1, x) (1 + F(nu+2, x))
    upper = F(nu+1/2, x) / (1 - F(nu+3/2, x))

    The denominator is positive automatically: F(a, x) < 1 whenever a > 0.
    """
    if p.x == 0.0:
        return Interval(0.0, 0.0)
    lo = f_kernel(p.nu + 1.0, p.x) * (1.0 + f_kernel(p.nu + 2.0, p.x))
    hi = f_kernel(p.nu + 0.5, p.x) / (1.0 - f_kernel(p.nu + 1.5, p.x))
    return Interval(lo, hi)


def _require_two_regime(p: EvalPoint, name: str) -> None:
    if p.nu_floor + 2 > p.x_floor:
        raise ValueError(
            f"{name} requires floor(nu) + 2 <= floor(x), got nu={p.nu}, x={p.x}")


def lower_h_bound(p: EvalPoint) -> float:
    """Lower bound on H(nu, x) in the regime floor(nu) + 2 <= floor(x).

    Three terms: a sqrt(x)-scale Gaussian-block term, the matching correction
    at the top of the block, and an exponentially damped geometric term for
    the remaining tail.  May be marginally negative in corner cases; callers
    that need a certified interval clamp at 0 (H is non-negative).
    """
    _require_two_regime(p, "lower_h_bound")
    nu, x = p.nu, p.x
    xi, ni, nf = p.x_floor, p.nu_floor, p.nu_frac
    t1 = 2.0 * x * math.exp(-(nu + 1.0) / x) / (
        nu + 1.5 + math.sqrt((nu + 1.5) ** 2 + 4.0 * x))
    t2 = 2.0 * x * math.exp(-(xi - nu - nf + 1.0) * (xi + nu - nf + 2.0) / (2.0 * x)) / (
        xi + 1.5 + math.sqrt((xi + 1.5) ** 2 + 8.0 * x / math.pi))
    t3 = math.exp(-(xi - ni - 1.0) * (xi + nu + nf) / (2.0 * x)) \
        * f_kernel(xi + nf, x) * (1.0 + f_kernel(xi + nf + 1.0, x))
    return t1 - t2 + t3


def upper_h_bound(p: EvalPoint) -> float:
    """Upper bound on H(nu, x) in the regime floor(nu) + 2 <= floor(x)."""
    _require_two_regime(p, "upper_h_bound")
    nu, x = p.nu, p.x
    xi, ni, nf = p.x_floor, p.nu_floor, p.nu_frac
    t1 = (2.0 * x / ALPHA0) * (
        1.0 / (nu + math.sqrt(nu * nu + 8.0 * x / (math.pi * ALPHA0)))
        - math.exp(-ALPHA0 * (x * x - nu * nu) / (2.0 * x))
        / (x + math.sqrt(x * x + 4.0 * x / ALPHA0)))
    t2 = math.exp(-ALPHA0 * (xi - ni - 1.0) * (xi + nu + nf - 1.0) / (2.0 * x)) \
        * f_kernel(xi + nf - 0.5, x) / (1.0 - f_kernel(xi + nf + 0.5, x))
    return t1 + t2


def h_bounds(p: EvalPoint, tightest: bool = False) -> HazardBoundReport:
    """Bounds on H(nu, x) with regime dispatch.

    In the regime floor(nu) + 2 <= floor(x) the two-regime pair is reported,
    otherwise the geometric pair.  The default never mixes the two families,
    which reproduces the reference figures exactly; ``tightest=True`` returns
    the intersection where both families apply.
    """
    geo = geometric_h_bounds(p)
    if p.nu_floor + 2 > p.x_floor:
        return HazardBoundReport(p, geo, HazardRegime.GEOMETRIC_ONLY)
    lo = lower_h_bound(p)
    if lo < 0.0:
        logger.debug("clamping negative hazard lower bound %g at nu=%g, x=%g", lo, p.nu, p.x)
        lo = 0.0
    hi = upper_h_bound(p)
    if tightest:
        return HazardBoundReport(
            p, Interval(max(lo, geo.lower), min(hi, geo.upper)), HazardRegime.TWO_REGIME)
    return HazardBoundReport(p, Interval(lo, hi), HazardRegime.TWO_REGIME)
