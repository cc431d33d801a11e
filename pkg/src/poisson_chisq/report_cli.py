"""Command-line front end: intervals, coverage CSV, summary tables, SVG plots.

Usage::

    poisson-chisq interval --method all --x 3 --alpha 0.05
    poisson-chisq coverage --method usual --alpha 0.05 --output usual95.csv
    poisson-chisq summary --alpha 0.01
    poisson-chisq plot --method structural --alpha 0.05 --output structural95.svg

Exit status is 0 on success, 2 for a usage error and 3 for an I/O error.
"""

import argparse
import csv
import io
import sys
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .coverage import STANDARD_GRID, GridSpec, coverage_curve, summarize
from .intervals import MethodKind, degrees_for, lambda_interval, rate_interval
from .special_fn import DomainError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

COMMANDS = ("interval", "coverage", "summary", "plot")
FORMATS = {
    "interval": ("text",),
    "coverage": ("csv",),
    "summary": ("text", "csv"),
    "plot": ("svg",),
}

ROW_LABELS = {
    MethodKind.USUAL: "Usual",
    MethodKind.STRUCTURAL_JEFFREYS_SCALE: "Structural & Bayes-Jeffreys prior for a positive parameter",
    MethodKind.BAYES_UNIFORM: "Bayes-uniform prior",
    MethodKind.JEFFREYS_POISSON: "Bayes-Jeffreys prior for Poisson",
    MethodKind.ADJUSTED_RAISE_F1: "Other option 1",
    MethodKind.ADJUSTED_DROP_F2: "Other option 2",
}

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


class UsageError(Exception):
    """Invalid combination of command-line options."""


@dataclass
class ReportConfig:
    command: str
    method: Optional[str] = None  # a MethodKind value or "all"
    alpha: float = 0.05
    x: Optional[int] = None
    t: float = 1.0
    grid: GridSpec = field(default_factory=lambda: STANDARD_GRID)
    output_path: Optional[str] = None
    format: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format is None:
            self.format = FORMATS[self.command][0]
        if self.format not in FORMATS[self.command]:
            allowed = ", ".join(FORMATS[self.command])
            raise UsageError(f"--format {self.format} is not valid for {self.command} (use {allowed})")
        if not 0.0 < self.alpha < 1.0:
            raise UsageError(f"--alpha must lie strictly between 0 and 1, got {self.alpha}")
        if self.command == "interval" and self.x is None:
            raise UsageError("interval requires --x")
        if self.x is not None and self.x < 0:
            raise UsageError(f"--x must be a nonnegative integer, got {self.x}")
        if not self.t > 0:
            raise UsageError(f"--t must be positive, got {self.t}")
        if self.method is None:
            if self.command in ("coverage", "plot"):
                raise UsageError(f"{self.command} requires --method (a method name or 'all')")
            self.method = "all"
        if self.method != "all":
            try:
                MethodKind.parse(self.method)
            except ValueError as exc:
                raise UsageError(str(exc)) from None

    @property
    def methods(self):
        if self.method == "all":
            return list(MethodKind)
        return [MethodKind.parse(self.method)]


def level_label(alpha):
    return f"{round(100.0 * (1.0 - alpha), 6):g}%"


def _lambda_decimals(denominator):
    # i / d has a finite decimal expansion iff d = 2**a * 5**b
    d, twos, fives = denominator, 0, 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    return max(1, twos, fives) if d == 1 else 10


def run_interval(config):
    level = level_label(config.alpha)
    lines = [f"x = {config.x}, {level} intervals, alpha = {config.alpha:g}"]
    if config.t != 1:
        lines.append(f"exposure t = {config.t:g}")
    for method in config.methods:
        f1, f2 = degrees_for(method, config.x)
        lam = lambda_interval(method, config.x, config.alpha)
        note = ""
        if f1 == 0:
            note += "  lower=0 since f1=0"
        if f2 == 0:
            note += "  upper uses f2=1"
        row = (
            f"{method.value:<10}  (f1, f2) = ({f1}, {f2})  {level}"
            f"  lambda: [{lam.lower:.6g}, {lam.upper:.6g}]"
        )
        if config.t != 1:
            nu = rate_interval(method, config.x, config.t, config.alpha)
            row += f"  rate: [{nu.lower:.6g}, {nu.upper:.6g}]"
        lines.append(row + note)
    return "\n".join(lines) + "\n"


def _curves(config):
    return [coverage_curve(m, config.alpha, config.grid) for m in config.methods]


def run_coverage(config, curves=None):
    """CSV text: ``lambda`` then one coverage column per method."""
    curves = curves if curves is not None else _curves(config)
    decimals = _lambda_decimals(config.grid.denominator)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if len(curves) == 1 and config.method != "all":
        writer.writerow(["lambda", "coverage"])
    else:
        writer.writerow(["lambda"] + [c.method.value for c in curves])
    for row, lam in enumerate(curves[0].lambdas):
        writer.writerow([f"{lam:.{decimals}f}"] + [f"{c.values[row]:.10f}" for c in curves])
    return buf.getvalue()


def run_summary(config, curves=None):
    curves = curves if curves is not None else _curves(config)
    stats = [(c.method, summarize(c)) for c in curves]
    if config.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["method", "f1", "f2", "mean", "minimum", "maximum", "argmin_lambda", "argmax_lambda"]
        )
        for method, s in stats:
            writer.writerow(
                [method.value, *method.rule]
                + [f"{v:.10f}" for v in (s.mean, s.minimum, s.maximum)]
                + [f"{s.argmin_lambda:g}", f"{s.argmax_lambda:g}"]
            )
        return buf.getvalue()

    grid = config.grid
    lams = grid.lambdas()
    width = max(len(label) for label in ROW_LABELS.values())
    lines = [
        f"Coverage probabilities for {level_label(config.alpha)} Intervals",
        f"lambda = {lams[0]:g} to {lams[-1]:g} in steps of {1 / grid.denominator:g}"
        f" ({len(grid)} points)",
        "",
        f"{'Interval basis':<{width}}  {'f1':<5} {'f2':<5} {'Mean':>7} {'Minimum':>8} {'Maximum':>8}",
    ]
    for method, s in stats:
        mean, lo, hi = s.rounded(4)
        f1, f2 = method.rule
        lines.append(
            f"{ROW_LABELS[method]:<{width}}  {f1:<5} {f2:<5} {mean:>7.4f} {lo:>8.4f} {hi:>8.4f}"
        )
    return "\n".join(lines) + "\n"


def _caption_rule(method):
    f1, f2 = (r.replace("+", " + ") for r in method.rule)
    return f"f₁ = {f1} and f₂ = {f2}"


def run_plot(config, curves=None):
    """SVG 1.1 line plot of coverage against lambda with a 1 - alpha reference."""
    curves = curves if curves is not None else _curves(config)
    width, height = 800, 500
    left, right, top, bottom = 70, 20, 50, 50
    pw, ph = width - left - right, height - top - bottom

    lams = curves[0].lambdas
    x_lo, x_hi = float(lams[0]), float(lams[-1])
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    nominal = 1.0 - config.alpha
    y_lo = min(min(float(c.values.min()) for c in curves) - 0.01, nominal)
    y_hi = 1.0

    def sx(v):
        return left + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return top + (y_hi - v) / (y_hi - y_lo) * ph

    title = f"Coverage Probabilities for {level_label(config.alpha)} Intervals"
    if len(curves) == 1:
        title += " for " + _caption_rule(curves[0].method)

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(width),
            "height": str(height),
            "viewBox": f"0 0 {width} {height}",
        },
    )
    ET.SubElement(svg, "rect", {"x": "0", "y": "0", "width": str(width), "height": str(height), "fill": "white"})
    ET.SubElement(
        svg, "text", {"x": str(width / 2), "y": "25", "text-anchor": "middle", "font-size": "15"}
    ).text = title

    axes = ET.SubElement(svg, "g", {"stroke": "black", "stroke-width": "1", "fill": "none"})
    ET.SubElement(axes, "line", {"x1": str(left), "y1": str(top + ph), "x2": str(left + pw), "y2": str(top + ph)})
    ET.SubElement(axes, "line", {"x1": str(left), "y1": str(top), "x2": str(left), "y2": str(top + ph)})

    labels = ET.SubElement(svg, "g", {"font-size": "11", "fill": "black"})
    for k in range(6):
        xv = x_lo + k * (x_hi - x_lo) / 5
        ET.SubElement(
            labels, "text", {"x": f"{sx(xv):.2f}", "y": str(top + ph + 18), "text-anchor": "middle"}
        ).text = f"{xv:.4g}"
        yv = y_lo + k * (y_hi - y_lo) / 5
        ET.SubElement(
            labels, "text", {"x": str(left - 6), "y": f"{sy(yv) + 4:.2f}", "text-anchor": "end"}
        ).text = f"{yv:.3f}"
    ET.SubElement(
        labels, "text", {"x": str(left + pw / 2), "y": str(height - 8), "text-anchor": "middle"}
    ).text = "λ"

    ET.SubElement(
        svg,
        "line",
        {
            "class": "reference",
            "x1": str(left),
            "y1": f"{sy(nominal):.2f}",
            "x2": str(left + pw),
            "y2": f"{sy(nominal):.2f}",
            "stroke": "gray",
            "stroke-dasharray": "6,4",
        },
    )
    for k, curve in enumerate(curves):
        pts = " ".join(f"{sx(float(a)):.2f},{sy(float(v)):.2f}" for a, v in zip(lams, curve.values))
        ET.SubElement(
            svg,
            "polyline",
            {
                "class": "coverage",
                "data-method": curve.method.value,
                "points": pts,
                "fill": "none",
                "stroke": _COLORS[k % len(_COLORS)],
                "stroke-width": "1.2",
            },
        )
        if len(curves) > 1:
            ET.SubElement(
                svg,
                "text",
                {
                    "x": str(left + pw - 80),
                    "y": str(top + 15 + 14 * k),
                    "font-size": "11",
                    "fill": _COLORS[k % len(_COLORS)],
                },
            ).text = curve.method.value
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


RUNNERS = {
    "interval": run_interval,
    "coverage": run_coverage,
    "summary": run_summary,
    "plot": run_plot,
}


def run(config):
    return RUNNERS[config.command](config)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(
        prog="poisson-chisq",
        description="Chi-square intervals for a Poisson mean and their coverage probabilities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    names = [m.value for m in MethodKind] + ["all"]
    parser.add_argument("--method", choices=names, help="interval method or 'all'")
    parser.add_argument("--alpha", type=float, default=0.05, help="1 - level (default 0.05)")
    parser.add_argument("--x", type=int, help="observed count (interval)")
    parser.add_argument("--t", type=float, default=1.0, help="exposure for the rate interval")
    parser.add_argument("--grid-start", type=int, default=STANDARD_GRID.start_index)
    parser.add_argument("--grid-end", type=int, default=STANDARD_GRID.end_index)
    parser.add_argument("--grid-denominator", type=int, default=STANDARD_GRID.denominator)
    parser.add_argument("--output", help="write to this file instead of stdout")
    parser.add_argument("--format", choices=("csv", "svg", "text"))
    return parser


def parse_config(argv):
    args = build_parser().parse_args(argv)
    try:
        grid = GridSpec(args.grid_start, args.grid_end, args.grid_denominator)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return ReportConfig(
        command=args.command,
        method=args.method,
        alpha=args.alpha,
        x=args.x,
        t=args.t,
        grid=grid,
        output_path=args.output,
        format=args.format,
    )


def main(argv=None):
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
        text = run(config)
    except (UsageError, DomainError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if config.output_path:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
