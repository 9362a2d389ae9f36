"""Closed-form envelopes for the Bessel ratio I_{nu+1}(x) / I_nu(x).

Two families are provided: algebraic envelopes of the form
x / (nu + c + sqrt(x^2 + (nu + c)^2)), valid for all nu, x >= 0, and
exponential envelopes exp(-(nu+1)/x) / exp(-ALPHA0 (nu+1/2)/x), valid when
nu + 1 <= x.  The exponential rate ALPHA0 is optimal: no faster decay works
as an upper envelope of sqrt(1+t^2) - t on [0, 1] while keeping a unit
constant.
"""

from __future__ import annotations

import math

from .types import EvalPoint, Interval

# Optimal exponential decay rate: exp(-ALPHA0) equals sqrt(2) - 1.
ALPHA0 = -math.log(math.sqrt(2.0) - 1.0)


def sqrt_surrogate(t: float) -> float:
    """sqrt(1 + t^2) - t, evaluated as 1 / (t + sqrt(1 + t^2)).

    The reciprocal form keeps full relative precision for large t, where the
    direct difference cancels catastrophically.
    """
    if t < 0:
        raise ValueError(f"sqrt_surrogate requires t >= 0, got {t}")
    return 1.0 / (t + math.hypot(1.0, t))


def best_exponential_bounds(t: float) -> Interval:
    """Exponential sandwich exp(-t) <= sqrt(1+t^2) - t <= exp(-ALPHA0 t) on [0, 1].

    Both ends coincide with the target at t = 0; the upper end also touches
    it at t = 1.  Outside [0, 1] the sandwich fails, so the domain is
    enforced.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"best_exponential_bounds is valid only on [0, 1], got t={t}")
    return Interval(math.exp(-t), math.exp(-ALPHA0 * t))


def amos_ratio_bounds(p: EvalPoint) -> Interval:
    """Algebraic ratio envelope, valid for all nu, x >= 0.

    lower = x / (nu + 1 + sqrt(x^2 + (nu+1)^2))
    upper = x / (nu + 1/2 + sqrt(x^2 + (nu+1/2)^2))
    """
    if p.x == 0.0:
        return Interval(0.0, 0.0)
    lo = p.x / (p.nu + 1.0 + math.hypot(p.x, p.nu + 1.0))
    hi = p.x / (p.nu + 0.5 + math.hypot(p.x, p.nu + 0.5))
    return Interval(lo, hi)


def exp_ratio_bounds(p: EvalPoint) -> Interval:
    """Exponential ratio envelope, valid when nu + 1 <= x.

    lower = exp(-(nu+1)/x), upper = exp(-ALPHA0 (nu+1/2)/x).  Calling this
    outside its regime is a domain error, never a silent fallback; regime
    dispatch belongs to combined_ratio_bounds.
    """
    if p.nu + 1.0 > p.x:
        raise ValueError(
            f"exp_ratio_bounds requires nu + 1 <= x, got nu={p.nu}, x={p.x}")
    return Interval(math.exp(-(p.nu + 1.0) / p.x),
                    math.exp(-ALPHA0 * (p.nu + 0.5) / p.x))


def combined_ratio_bounds(p: EvalPoint) -> Interval:
    """Regime dispatcher: exponential envelope when nu + 1 <= x, algebraic otherwise."""
    if p.nu + 1.0 <= p.x:
        return exp_ratio_bounds(p)
    return amos_ratio_bounds(p)
