"""Render the CLI's figure sweeps to image files.

Rendering is an optional side channel of the report path: the delimited
output stays canonical, and these helpers only consume the already-computed
rows.  The Agg backend is forced so the CLI works headless.
"""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _column(rows: list[dict], key: str) -> list[float]:
    return [math.nan if row.get(key) is None else row[key] for row in rows]


def render_ratio_figure(rows: list[dict], path: str) -> None:
    plt = _pyplot()
    nu = _column(rows, "nu")
    fig, ax = plt.subplots(figsize=(9, 6))
    ax.plot(nu, _column(rows, "oracle"), "k-", lw=1.2, label="ratio (oracle)")
    ax.plot(nu, _column(rows, "amos_lower"), "b-", lw=0.8, label="algebraic lower")
    ax.plot(nu, _column(rows, "amos_upper"), "c-", lw=0.8, label="algebraic upper")
    ax.plot(nu, _column(rows, "exp_lower"), "g--", lw=1.0, label="exponential lower")
    ax.plot(nu, _column(rows, "exp_upper"), "r--", lw=1.0, label="exponential upper")
    x = rows[0]["x"] if rows else float("nan")
    ax.set_xlabel(r"$\nu$")
    ax.set_ylabel(r"$I_{\nu+1}(x)/I_\nu(x)$")
    ax.set_title(f"Bessel ratio envelopes at x = {x:g}")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_hsum_figure(rows: list[dict], path: str) -> None:
    plt = _pyplot()
    nu = _column(rows, "nu")
    fig, ax = plt.subplots(figsize=(9, 6))
    ax.plot(nu, _column(rows, "oracle"), "k-", lw=1.2, label="hazard sum (oracle)")
    ax.plot(nu, _column(rows, "geo_lower"), "b:", lw=1.0, label="geometric lower")
    ax.plot(nu, _column(rows, "geo_upper"), "c:", lw=1.0, label="geometric upper")
    ax.plot(nu, _column(rows, "L"), "g-", lw=1.0, label="two-regime lower")
    ax.plot(nu, _column(rows, "U"), "r-", lw=1.0, label="two-regime upper")
    x = rows[0]["x"] if rows else float("nan")
    ax.set_xlabel(r"$\nu$")
    ax.set_ylabel(r"$H(\nu, x)$")
    ax.set_title(f"Hazard-sum bounds at x = {x:g}")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scaled_bessel_figure(rows: list[dict], path: str) -> None:
    plt = _pyplot()
    x = _column(rows, "x")
    fig, ax = plt.subplots(figsize=(9, 6))
    ax.plot(x, _column(rows, "oracle"), "k-", lw=1.2, label=r"$e^{-x} I_0(x)$ (oracle)")
    ax.plot(x, _column(rows, "asymptotic"), "m--", lw=1.0, label=r"$1/\sqrt{2\pi x}$")
    ax.plot(x, _column(rows, "lower"), "b-", lw=0.8, label="certified lower")
    ax.plot(x, _column(rows, "upper"), "r-", lw=0.8, label="certified upper")
    ax.set_xlabel("x")
    ax.set_ylabel("scaled Bessel value")
    ax.set_title("Two-sided bounds on the scaled central Bessel value")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
