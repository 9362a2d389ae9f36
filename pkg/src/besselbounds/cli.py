"""Command-line front end: evaluate bounds and oracles at points or over grids,
emit CSV for the three reference-figure sweeps (optionally rendering them to
image files), and run the full verification sweep.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numerical
non-convergence.  CSV output is deterministic: fixed 17-significant-digit
formatting, fixed row order, empty cells for undefined values (never NaN
text).  Grid sweeps may fan out to worker processes (BESSELBOUNDS_WORKERS,
default: available parallelism); rows are emitted in grid order regardless.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import plots, verify
from .hazard_bounds import HazardRegime, geometric_h_bounds, h_bounds
from .ratio_bounds import amos_ratio_bounds, exp_ratio_bounds
from .skellam import concentration_bounds, scaled_bessel_bounds_int, skellam_log_pmf, skellam_pmf_bounds
from .special import ConvergenceError, bessel_ratio, hazard_sum_oracle, scaled_bessel_i, skellam_tail_oracle
from .types import EvalPoint, SkellamParams

_GRID_POINT_CAP = 10_000_000
_PARALLEL_THRESHOLD = 4096


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """A one-variable sweep: var in {nu, x} stepping [start, stop], other fixed."""

    var: str
    start: float
    stop: float
    step: float
    fixed_other: float

    def __post_init__(self):
        if self.var not in ("nu", "x"):
            raise UsageError(f"grid variable must be 'nu' or 'x', got {self.var!r}")
        if not self.step > 0:
            raise UsageError(f"grid step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise UsageError(f"grid start {self.start} exceeds stop {self.stop}")
        if (self.stop - self.start) / self.step > _GRID_POINT_CAP:
            raise UsageError("grid has more than 1e7 points")

    def values(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(n)]


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid expects start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"--grid expects numeric start:stop:step, got {text!r}") from exc
    return start, stop, step


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else ""
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return ""
    return format(value, ".17g")


def _write_csv(header: list[str], rows: list[dict], out_path: str | None) -> None:
    def dump(stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in header])

    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as f:
            dump(f)
    else:
        dump(sys.stdout)


def _worker_count() -> int:
    env = os.environ.get("BESSELBOUNDS_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"BESSELBOUNDS_WORKERS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def _map_rows(fn, args_list: list) -> list[dict]:
    workers = _worker_count()
    if workers > 1 and len(args_list) >= _PARALLEL_THRESHOLD:
        chunk = max(16, len(args_list) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, args_list, chunksize=chunk))
    return [fn(a) for a in args_list]


# Row builders are module level so worker processes can import them.

def _ratio_row(args: tuple[float, float, float]) -> dict:
    nu, x, tol = args
    p = EvalPoint(nu, x)
    amos = amos_ratio_bounds(p)
    row = {"nu": nu, "x": x, "amos_lower": amos.lower, "amos_upper": amos.upper,
           "exp_lower": None, "exp_upper": None, "oracle": bessel_ratio(p, tol)}
    if nu + 1.0 <= x:
        e = exp_ratio_bounds(p)
        row["exp_lower"], row["exp_upper"] = e.lower, e.upper
    return row


def _hsum_row(args: tuple[float, float, float]) -> dict:
    nu, x, eps = args
    p = EvalPoint(nu, x)
    rep = h_bounds(p)
    geo = geometric_h_bounds(p)
    oracle, cert = hazard_sum_oracle(p, eps)
    row = {"nu": nu, "x": x, "regime": rep.regime.value,
           "geo_lower": geo.lower, "geo_upper": geo.upper,
           "L": None, "U": None, "oracle": oracle, "oracle_tail_bound": cert.tail_bound}
    if rep.regime is HazardRegime.TWO_REGIME:
        row["L"], row["U"] = rep.interval.lower, rep.interval.upper
    return row


def _scaled_bessel_row(args: tuple[float, float]) -> dict:
    x, tol = args
    sb, _ = scaled_bessel_i(EvalPoint(0.0, x), tol)
    bounds = scaled_bessel_bounds_int(0, x)
    return {"x": x, "oracle": sb.value,
            "asymptotic": 1.0 / math.sqrt(2.0 * math.pi * x) if x > 0 else None,
            "lower": bounds.interval.lower, "upper": bounds.interval.upper,
            "fallback_flag": bounds.fallback}


def _nu_values(args, default_x: float | None = None) -> tuple[float, list[float]]:
    if args.figure is not None:
        x = args.x if args.x is not None else default_x
        grid = GridSpec("nu", 0.0, 150.0 if args.figure == 1 else 200.0,
                        0.015 if args.figure == 1 else 0.01, x)
        if args.grid is not None:
            start, stop, step = _parse_grid(args.grid)
            grid = GridSpec("nu", start, stop, step, x)
        return x, grid.values()
    if args.x is None:
        raise UsageError("--x is required without --figure")
    if args.grid is not None:
        start, stop, step = _parse_grid(args.grid)
        return args.x, GridSpec("nu", start, stop, step, args.x).values()
    if args.nu is None:
        raise UsageError("provide --nu for a single point or --grid for a sweep")
    return args.x, [args.nu]


def _cmd_ratio(args) -> int:
    x, nus = _nu_values(args, default_x=100.0)
    rows = _map_rows(_ratio_row, [(nu, x, args.tol) for nu in nus])
    _write_csv(["nu", "x", "amos_lower", "amos_upper", "exp_lower", "exp_upper", "oracle"],
               rows, args.out)
    if args.plot:
        plots.render_ratio_figure(rows, args.plot)
    return 0


def _cmd_hsum(args) -> int:
    x, nus = _nu_values(args, default_x=50.0)
    eps = args.eps if args.eps is not None else (0.01 if args.figure is not None else 1e-12)
    if not eps > 0:
        raise UsageError(f"--eps must be > 0, got {eps}")
    rows = _map_rows(_hsum_row, [(nu, x, eps) for nu in nus])
    _write_csv(["nu", "x", "regime", "geo_lower", "geo_upper", "L", "U",
                "oracle", "oracle_tail_bound"], rows, args.out)
    if args.plot:
        plots.render_hsum_figure(rows, args.plot)
    return 0


def _cmd_scaled_bessel(args) -> int:
    if args.figure is not None:
        grid = GridSpec("x", 0.0, 100.0, 0.01, 0.0)
        if args.grid is not None:
            start, stop, step = _parse_grid(args.grid)
            grid = GridSpec("x", start, stop, step, 0.0)
        xs = grid.values()
    elif args.grid is not None:
        start, stop, step = _parse_grid(args.grid)
        xs = GridSpec("x", start, stop, step, 0.0).values()
    elif args.x is not None:
        xs = [args.x]
    else:
        raise UsageError("provide --x for a single point or --grid for a sweep")
    rows = _map_rows(_scaled_bessel_row, [(x, args.tol) for x in xs])
    _write_csv(["x", "oracle", "asymptotic", "lower", "upper", "fallback_flag"], rows, args.out)
    if args.plot:
        plots.render_scaled_bessel_figure(rows, args.plot)
    return 0


def _require_positive(value: float | None, flag: str) -> float:
    if value is None:
        raise UsageError(f"{flag} is required")
    if not value > 0:
        raise UsageError(f"{flag} must be > 0, got {value}")
    return value


def _cmd_skellam(args) -> int:
    if args.skellam_command == "pmf":
        params = SkellamParams(_require_positive(args.l1, "--l1"), _require_positive(args.l2, "--l2"))
        lp = skellam_log_pmf(params, args.n)
        rows = [{"l1": params.lambda1, "l2": params.lambda2, "n": args.n,
                 "log_pmf": lp, "pmf": math.exp(lp)}]
        _write_csv(["l1", "l2", "n", "log_pmf", "pmf"], rows, args.out)
    elif args.skellam_command == "pmf-bounds":
        params = SkellamParams(_require_positive(args.l1, "--l1"), _require_positive(args.l2, "--l2"))
        b = skellam_pmf_bounds(params, args.n)
        rows = [{"l1": params.lambda1, "l2": params.lambda2, "n": args.n,
                 "lower": b.lower, "upper": b.upper,
                 "oracle": math.exp(skellam_log_pmf(params, args.n))}]
        _write_csv(["l1", "l2", "n", "lower", "upper", "oracle"], rows, args.out)
    elif args.skellam_command == "tail":
        lam = _require_positive(args.lam, "--lambda")
        if args.n < 0:
            raise UsageError(f"--n must be >= 0 for tails, got {args.n}")
        tail = skellam_tail_oracle(SkellamParams(lam, lam), args.n, args.tol)
        _write_csv(["lambda", "n", "tail"], [{"lambda": lam, "n": args.n, "tail": tail}], args.out)
    else:  # concentration
        lam = _require_positive(args.lam, "--lambda")
        if args.nu is None or args.nu < 0 or int(args.nu) != args.nu:
            raise UsageError(f"--nu must be a non-negative integer, got {args.nu}")
        nu = int(args.nu)
        rep = concentration_bounds(nu, lam)
        rows = [{"lambda": lam, "nu": nu,
                 "lower": rep.interval.lower, "upper": rep.interval.upper,
                 "oracle_tail": skellam_tail_oracle(SkellamParams(lam, lam), nu, args.tol),
                 "h_lower": rep.h_interval.lower, "h_upper": rep.h_interval.upper,
                 "sb_lower": rep.scaled_bessel_interval.lower,
                 "sb_upper": rep.scaled_bessel_interval.upper,
                 "fallback_flag": rep.fallback}]
        _write_csv(["lambda", "nu", "lower", "upper", "oracle_tail",
                    "h_lower", "h_upper", "sb_lower", "sb_upper", "fallback_flag"],
                   rows, args.out)
    return 0


def _cmd_verify(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) \
        if args.checks else verify.CHECK_NAMES
    try:
        report = verify.run_verification(tolerance=args.tol, perturb=args.perturb, checks=checks)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"points checked:     {report.points_checked}")
    print(f"violations:         {len(report.violations)}")
    print(f"max relative slack: {report.max_relative_slack:.3e}")
    for v in report.violations[:20]:
        print(f"  VIOLATION {v.point} {v.bound_name}: bound={v.bound_value!r} "
              f"oracle={v.oracle_value!r}")
    if len(report.violations) > 20:
        print(f"  ... and {len(report.violations) - 20} more")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(report.to_dict(), f, indent=2)
    print("verification: " + ("PASS" if report.passed else "FAIL"))
    return 0 if report.passed else 2


class _Parser(argparse.ArgumentParser):
    # Usage problems exit 1 (argparse default is 2, reserved here for verification failure).
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="besselbounds",
                     description="Certified bounds and oracles for Bessel ratios, "
                                 "hazard-type tail sums, and Skellam probabilities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, figure_no=None):
        p.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
        p.add_argument("--tol", type=float, default=1e-12, help="oracle tolerance")
        if figure_no is not None:
            p.add_argument("--figure", type=int, choices=[figure_no],
                           help="use this reference-figure preset grid")
            p.add_argument("--plot", metavar="PATH",
                           help="also render the sweep to an image file")

    ratio = sub.add_parser("ratio", help="ratio envelopes and oracle (preset: --figure 1)")
    add_common(ratio, figure_no=1)
    ratio.add_argument("--nu", type=float)
    ratio.add_argument("--x", type=float)
    ratio.add_argument("--grid", metavar="START:STOP:STEP", help="sweep nu")

    hsum = sub.add_parser("hsum", help="hazard-sum bounds and oracle (preset: --figure 2)")
    add_common(hsum, figure_no=2)
    hsum.add_argument("--nu", type=float)
    hsum.add_argument("--x", type=float)
    hsum.add_argument("--grid", metavar="START:STOP:STEP", help="sweep nu")
    hsum.add_argument("--eps", type=float, default=None,
                      help="oracle truncation tolerance (preset default 0.01, else 1e-12)")

    sb = sub.add_parser("scaled-bessel",
                        help="bounds on exp(-x) I_0(x) over x (preset: --figure 3)")
    add_common(sb, figure_no=3)
    sb.add_argument("--x", type=float)
    sb.add_argument("--grid", metavar="START:STOP:STEP", help="sweep x")

    sk = sub.add_parser("skellam", help="Skellam PMF, PMF bounds, tails, concentration")
    sksub = sk.add_subparsers(dest="skellam_command", required=True, parser_class=_Parser)
    for name in ("pmf", "pmf-bounds", "tail", "concentration"):
        s = sksub.add_parser(name)
        s.add_argument("--out", metavar="PATH")
        s.add_argument("--tol", type=float, default=1e-12)
        s.add_argument("--l1", type=float)
        s.add_argument("--l2", type=float)
        s.add_argument("--lambda", dest="lam", type=float)
        s.add_argument("--n", type=int, default=0)
        s.add_argument("--nu", type=float)

    ver = sub.add_parser("verify", help="replay all certified intervals against oracles")
    ver.add_argument("--tol", type=float, default=1e-9, help="relative slack for oracle error")
    ver.add_argument("--report", metavar="PATH", help="write a JSON report here")
    ver.add_argument("--checks", help=f"comma-separated subset of {', '.join(verify.CHECK_NAMES)}")
    ver.add_argument("--perturb", type=float, default=0.0,
                     help="harness self-test: narrow every interval by this delta")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    dispatch = {"ratio": _cmd_ratio, "hsum": _cmd_hsum, "scaled-bessel": _cmd_scaled_bessel,
                "skellam": _cmd_skellam, "verify": _cmd_verify}
    try:
        return dispatch[args.command](args)
    except UsageError as exc:
        print(f"besselbounds: error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"besselbounds: non-convergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
