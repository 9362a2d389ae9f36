"""Replay every certified interval in the package against its independent oracle.

Each check walks a preset grid, compares the closed-form interval with the
oracle value, and records any point where the oracle escapes the interval by
more than the allowed relative slack.  A ``perturb`` delta (a self-test hook
for the harness) narrows every interval before comparison, which must make a
healthy sweep fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .hazard_bounds import geometric_h_bounds, h_bounds
from .ratio_bounds import amos_ratio_bounds, best_exponential_bounds, combined_ratio_bounds, sqrt_surrogate
from .skellam import concentration_bounds, scaled_bessel_bounds_int, skellam_log_pmf, skellam_pmf_bounds
from .special import (bessel_ratio_ladder, beta_fn, gaussian_tail_bounds, hazard_sum_oracle,
                      scaled_bessel_i, skellam_tail_oracle)
from .types import EvalPoint, SkellamParams

CHECK_NAMES = ("envelope", "ratio", "hazard", "scaled_bessel", "gaussian", "skellam", "beta")


@dataclass
class Violation:
    point: str
    bound_name: str
    bound_value: float
    oracle_value: float

    def to_dict(self) -> dict:
        return {"point": self.point, "bound_name": self.bound_name,
                "bound_value": self.bound_value, "oracle_value": self.oracle_value}


@dataclass
class SweepReport:
    points_checked: int = 0
    violations: list = field(default_factory=list)
    max_relative_slack: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"points_checked": self.points_checked,
                "violations": [v.to_dict() for v in self.violations],
                "max_relative_slack": self.max_relative_slack,
                "passed": self.passed}


class _Recorder:
    def __init__(self, tolerance: float, perturb: float):
        self.tolerance = tolerance
        self.perturb = perturb
        self.report = SweepReport()

    def check(self, point: str, name: str, lower: float, upper: float, oracle: float) -> None:
        lower = lower + self.perturb
        upper = upper - self.perturb
        self.report.points_checked += 1
        scale = max(abs(oracle), abs(lower), abs(upper), 1e-300)
        overshoot = max(lower - oracle, oracle - upper, 0.0) / scale
        if overshoot > self.report.max_relative_slack:
            self.report.max_relative_slack = overshoot
        if overshoot > self.tolerance:
            side = f"{name}.lower" if lower - oracle > oracle - upper else f"{name}.upper"
            value = lower if side.endswith("lower") else upper
            self.report.violations.append(Violation(point, side, value, oracle))


def _grid(start: float, stop: float, step: float) -> list[float]:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(n)]


def _check_envelope(rec: _Recorder) -> None:
    for t in _grid(0.0, 1.0, 1e-3):
        b = best_exponential_bounds(t)
        rec.check(f"t={t:.6g}", "exp_envelope", b.lower, b.upper, sqrt_surrogate(t))


def _check_ratio(rec: _Recorder) -> None:
    for x in (0.5, 2.0, 10.0, 50.0, 100.0):
        top = min(2.0 * x, 200.0)
        for offset in (0.0, 0.25, 0.5, 0.75):
            count = int(top - offset) + 1
            if count < 1:
                continue
            ladder = bessel_ratio_ladder(offset, x, count)
            for j, r in enumerate(ladder):
                p = EvalPoint(offset + j, x)
                point = f"nu={p.nu:.6g},x={x:.6g}"
                a = amos_ratio_bounds(p)
                rec.check(point, "amos", a.lower, a.upper, r)
                c = combined_ratio_bounds(p)
                rec.check(point, "combined", c.lower, c.upper, r)


def _check_hazard(rec: _Recorder) -> None:
    for x in (2.0, 5.0, 10.0, 50.0, 100.0):
        for nu in _grid(0.0, 2.0 * x, 0.5):
            p = EvalPoint(nu, x)
            oracle, _ = hazard_sum_oracle(p, 1e-12)
            point = f"nu={nu:.6g},x={x:.6g}"
            rep = h_bounds(p)
            rec.check(point, f"h_{rep.regime.value}", rep.interval.lower, rep.interval.upper, oracle)
            geo = geometric_h_bounds(p)
            rec.check(point, "h_geometric", geo.lower, geo.upper, oracle)


def _check_scaled_bessel(rec: _Recorder) -> None:
    for x in (10.0, 50.0, 100.0):
        for nu in range(0, 2 * int(x) + 1):
            sb, _ = scaled_bessel_i(EvalPoint(float(nu), x), 1e-13)
            b = scaled_bessel_bounds_int(nu, x)
            rec.check(f"nu={nu},x={x:.6g}", "scaled_bessel_int",
                      b.interval.lower, b.interval.upper, sb.value)


def _check_gaussian(rec: _Recorder) -> None:
    for t in _grid(0.0, 10.0, 0.1):
        b = gaussian_tail_bounds(t)
        true = math.sqrt(math.pi) / 2.0 * math.erfc(t)
        rec.check(f"t={t:.6g}", "gaussian_tail", b.lower, b.upper, true)


def _check_skellam(rec: _Recorder) -> None:
    for lam in (5.0, 25.0):
        params = SkellamParams(lam, lam)
        for nu in range(0, 4 * int(lam) + 1):
            tail = skellam_tail_oracle(params, nu, 1e-12)
            c = concentration_bounds(nu, lam)
            rec.check(f"lam={lam:.6g},nu={nu}", "concentration",
                      c.interval.lower, c.interval.upper, tail)
    for l1, l2 in ((4.0, 9.0), (25.0, 25.0)):
        params = SkellamParams(l1, l2)
        for n in (-3, 0, 2, 7):
            b = skellam_pmf_bounds(params, n)
            rec.check(f"l1={l1:.6g},l2={l2:.6g},n={n}", "pmf",
                      b.lower, b.upper, math.exp(skellam_log_pmf(params, n)))


def _check_beta(rec: _Recorder) -> None:
    # Sharp two-sided envelope of 1/(ab) - B(a, b) on [1, 10]^2.
    for i in range(50):
        for j in range(50):
            a = 1.0 + 9.0 * i / 49.0
            b = 1.0 + 9.0 * j / 49.0
            rec.check(f"a={a:.6g},b={b:.6g}", "beta_gap", 0.0, 0.08731,
                      1.0 / (a * b) - beta_fn(a, b))


_CHECKS = {
    "envelope": _check_envelope,
    "ratio": _check_ratio,
    "hazard": _check_hazard,
    "scaled_bessel": _check_scaled_bessel,
    "gaussian": _check_gaussian,
    "skellam": _check_skellam,
    "beta": _check_beta,
}


def run_verification(tolerance: float = 1e-9, perturb: float = 0.0,
                     checks: tuple[str, ...] = CHECK_NAMES) -> SweepReport:
    """Run the selected verification sweeps and aggregate their results."""
    unknown = [c for c in checks if c not in _CHECKS]
    if unknown:
        raise ValueError(f"unknown verification checks: {unknown}; known: {list(_CHECKS)}")
    if not checks:
        raise ValueError("no verification checks selected")
    rec = _Recorder(tolerance, perturb)
    for name in checks:
        _CHECKS[name](rec)
    return rec.report
