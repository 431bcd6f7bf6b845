"""Command-line front end: enumeration, validation, asymptotics, plot data.

Counts are serialised as decimal strings (they overflow 64-bit integers
well before order 60); CSV uses comma separators and newline endings with
no locale formatting, and JSON emits any number beyond double precision
as a string.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import click
import mpmath as mp

from . import asym, oracle, shapes
from .joint import joint_gf
from .mseries import CapConfig
from .secondary import SecondaryParams, secondary_gf

_MAX_JSON_INT = 2**53


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the subcommands."""

    order: int = 60
    precision_bits: int = 128
    oracle_caps: Dict[int, int] = field(
        default_factory=lambda: dict(oracle.DEFAULT_JOINT_CAPS)
    )
    fmt: str = "csv"
    out: Optional[Path] = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")


def _json_number(value):
    """Ints beyond double precision and all high-precision reals go out as
    strings so nothing is silently rounded by a JSON reader."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value if abs(value) <= _MAX_JSON_INT else str(value)
    if isinstance(value, float):
        return value
    return mp.nstr(value, 24)


def _emit(text: str, out: Optional[Path]):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _emit_series(series, fmt: str, out: Optional[Path]):
    if fmt == "json":
        payload = [
            [k, _json_number(v)] for k, v in enumerate(series.integer_coeffs())
        ]
        _emit(json.dumps(payload, sort_keys=True) + "\n", out)
    else:
        _emit(series.to_csv(), out)


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
)
out_option = click.option(
    "--out", type=click.Path(dir_okay=False, path_type=Path), default=None
)


@click.group()
def main():
    """Exact and asymptotic enumeration of two-backbone RNA interaction
    structures."""


@main.command()
@click.option("--sigma", type=int, required=True, help="Minimum stack length.")
@click.option(
    "--lambda", "min_arc", type=int, required=True, help="Minimum arc length."
)
@click.option("--order", type=int, default=60, show_default=True)
@format_option
@out_option
def secondary(sigma, min_arc, order, fmt, out):
    """Counts of single-backbone structures, one row n,count per size."""
    try:
        params = SecondaryParams(sigma, min_arc)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if order < 0:
        raise click.UsageError("order must be nonnegative")
    _emit_series(secondary_gf(params, order), fmt, out)


@main.command()
@click.option("--sigma", type=int, required=True)
@click.option("--order", type=int, default=60, show_default=True)
@format_option
@out_option
def joint(sigma, order, fmt, out):
    """Counts of two-backbone structures, one row s,count per total size."""
    if sigma < 1:
        raise click.UsageError("sigma must be >= 1")
    if order < 0:
        raise click.UsageError("order must be nonnegative")
    _emit_series(joint_gf(sigma, order), fmt, out)


@main.command(name="shapes")
@click.option("--max-interior", type=int, default=4, show_default=True)
@click.option("--max-exterior", type=int, default=4, show_default=True)
@format_option
@out_option
def shapes_cmd(max_interior, max_exterior, fmt, out):
    """Shape counts by (t, h, a1, a2), rows t,h,a1,a2,count."""
    if max_interior < 0 or max_exterior < 0:
        raise click.UsageError("caps must be nonnegative")
    config = CapConfig(var_caps=(max_interior, max_exterior, max_exterior, max_exterior))
    g = shapes.shape_gf_closed(config)
    rows = sorted(
        (key, int(c)) for key, c in g.terms().items() if key[0] <= max_interior
    )
    if fmt == "json":
        payload = [
            {"t": t, "h": h, "a1": a1, "a2": a2, "count": _json_number(c)}
            for (t, h, a1, a2), c in rows
        ]
        _emit(json.dumps(payload, sort_keys=True) + "\n", out)
    else:
        text = "".join(
            f"{t},{h},{a1},{a2},{c}\n" for (t, h, a1, a2), c in rows
        )
        _emit(text, out)


def _run_config(**kwargs) -> RunConfig:
    try:
        return RunConfig(**kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@main.command(name="asym")
@click.option("--sigma", type=int, required=True)
@click.option("--order", type=int, default=60, show_default=True)
@click.option("--precision-bits", type=int, default=128, show_default=True)
@out_option
def asym_cmd(sigma, order, precision_bits, out):
    """Growth-rate estimate as JSON."""
    if sigma < 1:
        raise click.UsageError("sigma must be >= 1")
    cfg = _run_config(order=order, precision_bits=precision_bits, out=out)
    est = asym.estimate_asymptotics(sigma, cfg.order, cfg.precision_bits)
    payload = {
        "sigma": est.sigma,
        "kappa": _json_number(est.kappa),
        "kappa_inv": _json_number(est.kappa_inv),
        "c": _json_number(est.c),
        "exponent": str(est.exponent),
        "precision_bits": est.precision_bits,
        "verified_unique": est.verified_unique,
    }
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


@main.command()
@click.option("--sigma", type=int, required=True)
@click.option("--max-size", type=int, required=True)
@out_option
def validate(sigma, max_size, out):
    """Exhaustive-search counts against series coefficients, JSON per size.

    Exits nonzero if any size disagrees.
    """
    if sigma < 1:
        raise click.UsageError("sigma must be >= 1")
    if max_size < 0:
        raise click.UsageError("max-size must be nonnegative")
    series = joint_gf(sigma, max_size)
    report = []
    all_match = True
    for s in range(max_size + 1):
        exact = oracle.count_joint_bruteforce(sigma, s, cap=max_size)
        from_gf = int(series[s])
        match = exact == from_gf
        all_match = all_match and match
        report.append(
            {
                "sigma": sigma,
                "s": s,
                "oracle": _json_number(exact),
                "gf": _json_number(from_gf),
                "match": match,
            }
        )
    _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", out)
    if not all_match:
        sys.exit(1)


@main.command()
@click.option("--sigma", type=int, required=True)
@click.option("--order", type=int, default=60, show_default=True)
@click.option("--precision-bits", type=int, default=128, show_default=True)
@out_option
@click.option(
    "--figure",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Render the comparison plot to this file (defaults next to --out).",
)
@click.option("--no-figure", is_flag=True, help="Skip figure rendering.")
def plot(sigma, order, precision_bits, out, figure, no_figure):
    """Exact counts against the asymptotic power law.

    CSV columns s,exact,asymptotic,ratio; the asymptotic and ratio cells
    are empty at s = 0.  A log-scale figure is rendered alongside the CSV
    whenever a figure path is given or implied by --out.
    """
    if sigma < 1:
        raise click.UsageError("sigma must be >= 1")
    cfg = _run_config(order=order, precision_bits=precision_bits, out=out)
    rows = asym.asymptotic_table(
        sigma, range(cfg.order + 1), order=cfg.order, precision_bits=cfg.precision_bits
    )
    lines = ["s,exact,asymptotic,ratio"]
    for s, exact, approx, ratio in rows:
        if approx is None:
            lines.append(f"{s},{exact},,")
        else:
            lines.append(f"{s},{exact},{mp.nstr(approx, 17)},{mp.nstr(ratio, 17)}")
    _emit("\n".join(lines) + "\n", out)

    if no_figure:
        return
    if figure is None and out is not None:
        figure = Path(out).with_suffix(".png")
    if figure is None:
        return
    _render_figure(sigma, rows, figure)


def _render_figure(sigma: int, rows, path: Path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [s for s, _, approx, _ in rows if approx is not None]
    exact = [float(e) for s, e, approx, _ in rows if approx is not None]
    approx = [float(a) for s, _, a, _ in rows if a is not None]
    fig, (ax0, ax1) = plt.subplots(
        2, 1, figsize=(7, 7), sharex=True, height_ratios=[3, 1]
    )
    ax0.semilogy(xs, exact, "o", ms=3, label="exact")
    ax0.semilogy(xs, approx, "-", label="asymptotic")
    ax0.set_ylabel("count")
    ax0.legend()
    ax0.set_title(f"Interaction structures, sigma={sigma}")
    ratios = [e / a for e, a in zip(exact, approx)]
    ax1.plot(xs, ratios, "-")
    ax1.axhline(1.0, color="gray", lw=0.8)
    ax1.set_xlabel("total size s")
    ax1.set_ylabel("exact / asymptotic")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


if __name__ == "__main__":
    main()
