"""``leakycav`` command line: ``sweep`` writes curve CSVs, ``compare`` checks analytic against numeric.

Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure,
3 comparison tolerance exceeded.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .errors import ArgumentError, ConfigurationError, InternalConsistencyError, NumericalError
from .scenarios import QUANTITIES, AlphaMode, ScenarioRow, fig5_curve, sweep

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_COMPARE = 0, 1, 2, 3
CSV_HEADER = "scenario,gt,kappa1_over_g,kappa2_over_g,quantity,value,method"
UNGATED = {"TRACE"}

_PI_RE = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$", re.I)


@dataclass(frozen=True)
class Angle:
    """``coeff * pi`` when ``pi_multiple`` is set, else ``coeff`` itself; kept exact until ``float()``."""

    coeff: Fraction
    pi_multiple: bool

    def __float__(self):
        return float(self.coeff) * math.pi if self.pi_multiple else float(self.coeff)


def parse_angle(text: str) -> Angle:
    """Accepts plain numbers and rational multiples of pi: ``pi/4``, ``3pi/4``, ``-2*pi``, ``0.5pi``."""
    m = _PI_RE.match(text)
    if m:
        sign, num, den = m.groups()
        coeff = Fraction(num) if num else Fraction(1)
        if den:
            coeff /= Fraction(den)
        return Angle(-coeff if sign == "-" else coeff, True)
    try:
        return Angle(Fraction(text.strip()), False)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or multiple of pi: {text!r}") from None


def angle_grid(lo: Angle, hi: Angle, steps: int) -> list[float]:
    if steps < 2:
        raise ConfigurationError("--gt-steps must be >= 2")
    if not float(hi) > float(lo):
        raise ConfigurationError("--gt-max must exceed --gt-min")
    pi_grid = (lo.pi_multiple or lo.coeff == 0) and (hi.pi_multiple or hi.coeff == 0)
    exact = pi_grid or not (lo.pi_multiple or hi.pi_multiple)
    if exact:
        step = (hi.coeff - lo.coeff) / (steps - 1)
        return [float(Angle(lo.coeff + i * step, pi_grid)) for i in range(steps)]
    a, b = float(lo), float(hi)
    return [a + i * (b - a) / (steps - 1) for i in range(steps)]


def kappa_grid(lo: float, hi: float, steps: int) -> list[float]:
    if not 0 < lo < hi or steps < 2:
        raise ConfigurationError("fig5 needs 0 < --kappa-min < --kappa-max and --kappa-steps >= 2")
    a, b = math.log10(lo), math.log10(hi)
    return [10 ** (a + i * (b - a) / (steps - 1)) for i in range(steps)]


def fmt(x: float) -> str:
    s = f"{x:.9g}"
    return "0" if s == "-0" else s


def rows_to_csv(rows: Sequence[ScenarioRow]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(",".join((r.scenario, fmt(r.gt), fmt(r.kappa1_over_g), fmt(r.kappa2_over_g),
                            r.quantity, fmt(r.value), r.method)) + "\n")
    return buf.getvalue()


def calibrated_tolerance(scenario: str) -> float:
    data = json.loads(resources.files("leakycav").joinpath("calibration.json").read_text())
    try:
        return float(data["bounds"][scenario])
    except KeyError:
        raise ConfigurationError(f"no calibrated tolerance for scenario {scenario!r}") from None


def compute_rows(args, method: str) -> list[ScenarioRow]:
    if args.kappa1 < 0 or args.kappa2 < 0:
        raise ConfigurationError("leakage ratios must be >= 0")
    if not args.dt > 0:
        raise ConfigurationError("--dt must be positive")
    gts = angle_grid(args.gt_min, args.gt_max, args.gt_steps)
    if args.scenario == "fig5":
        kappas = kappa_grid(args.kappa_min, args.kappa_max, args.kappa_steps)
        return fig5_curve(gts, kappas, args.alpha_mode, method, args.dt)
    return sweep(args.scenario, gts, args.kappa1, args.kappa2, method, args.alpha_mode, args.dt)


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def cmd_sweep(args) -> int:
    rows = compute_rows(args, args.method)
    _emit(rows_to_csv(rows), args.out)
    return EXIT_OK


def compare_rows(rows: Sequence[ScenarioRow]) -> dict[str, tuple[float, ScenarioRow]]:
    """Per quantity: largest ``|analytic - numeric|`` and the analytic row where it occurs."""
    analytic = {}
    worst: dict[str, tuple[float, ScenarioRow]] = {}
    for r in rows:
        key = (r.gt, r.kappa1_over_g, r.kappa2_over_g, r.quantity)
        if r.method == "analytic":
            analytic[key] = r
            continue
        a = analytic[key]
        diff = abs(a.value - r.value)
        if r.quantity not in worst or diff > worst[r.quantity][0]:
            worst[r.quantity] = (diff, a)
    return worst


def cmd_compare(args) -> int:
    if args.method not in (None, "both"):
        raise ConfigurationError("compare always runs --method both")
    tol = calibrated_tolerance(args.scenario) if args.tolerance == "calibrated" else float(args.tolerance)
    rows = compute_rows(args, "both")
    if args.out:
        _emit(rows_to_csv(rows), args.out)
    worst = compare_rows(rows)
    failed = False
    lines = [f"# compare {args.scenario} kappa1={fmt(args.kappa1)} kappa2={fmt(args.kappa2)} "
             f"alpha-mode={args.alpha_mode.value} tolerance={fmt(tol)}"]
    for q in QUANTITIES[args.scenario]:
        diff, row = worst[q]
        if q in UNGATED:
            status = "info"
        elif diff <= tol:
            status = "ok"
        else:
            status, failed = "FAIL", True
        where = f"gt={fmt(row.gt)}" + (f" kappa={fmt(row.kappa1_over_g)}" if args.scenario == "fig5" else "")
        lines.append(f"{q}\tmax_abs_diff={diff:.3e}\tworst {where}\t{status}")
    report = "\n".join(lines) + "\n"
    (sys.stdout if args.out != "-" else sys.stderr).write(report)
    return EXIT_COMPARE if failed else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--scenario", required=True, choices=sorted(QUANTITIES))
    p.add_argument("--gt-min", type=parse_angle, default=parse_angle("0"))
    p.add_argument("--gt-max", type=parse_angle, default=parse_angle("2pi"))
    p.add_argument("--gt-steps", type=int, default=201)
    p.add_argument("--kappa1", type=float, default=0.0, help="kappa1/g")
    p.add_argument("--kappa2", type=float, default=0.0, help="kappa2/g")
    p.add_argument("--alpha-mode", type=AlphaMode, default=AlphaMode.VERBATIM,
                   choices=list(AlphaMode), metavar="{verbatim,limit-consistent}")
    p.add_argument("--dt", type=float, default=1e-3, help="RK4 step in units of 1/g")
    p.add_argument("--kappa-min", type=float, default=1e-3, help="fig5 only")
    p.add_argument("--kappa-max", type=float, default=1.0, help="fig5 only")
    p.add_argument("--kappa-steps", type=int, default=31, help="fig5 only (log-spaced)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leakycav", description="Entanglement monogamy and swapping with leaky cavities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("sweep", help="write one CSV row per (gt, quantity, method)")
    _add_common(p)
    p.add_argument("--method", choices=("analytic", "numeric", "both"), default="analytic")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("compare", help="max |analytic - numeric| per quantity")
    _add_common(p)
    p.add_argument("--method", choices=("both",), default=None)
    p.add_argument("--tolerance", default="1e-6", help="float, or 'calibrated' for the frozen kappa/g=0.1 bound")
    p.add_argument("--out", default=None, help="optionally also write the CSV")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NumericalError, InternalConsistencyError) as exc:
        print(f"leakycav: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigurationError, ArgumentError, ValueError) as exc:
        print(f"leakycav: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"leakycav: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
