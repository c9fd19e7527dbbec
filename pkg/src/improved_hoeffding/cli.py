"""Command-line interface: bounds, lemma check, simulation, inversion, comparison.

Every subcommand writes CSV with a header row to stdout (or ``--out``).
Exit codes: 0 success, 1 numeric failure (including a failed check),
2 usage or validation error.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import harness
from .interval import IntervalError, make_interval, read_intervals
from .mgf import MgfBoundKind
from .tail import (
    REPORT_HEADER,
    DeviationForm,
    IntervalSet,
    Sidedness,
    fmt,
    invert_for_n,
    invert_for_t,
    one_sided_bound,
    report_row,
    tail_bound,
)

DEFAULT_SEED = 0x5EED


class UsageError(Exception):
    pass


@dataclass
class TGrid:
    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def _t_grid(text: str) -> TGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:steps, got {text!r}")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed grid {text!r}") from None
    if not (math.isfinite(start) and math.isfinite(stop)) or start <= 0:
        raise argparse.ArgumentTypeError("grid start must be positive and finite")
    if stop < start:
        raise argparse.ArgumentTypeError("grid stop must not be below start")
    if steps < 1:
        raise argparse.ArgumentTypeError("grid steps must be at least 1")
    return TGrid(start, stop, steps)


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _dist_spec(text: str):
    if text == "two-point":
        return ("two-point", 1.0)
    if text.startswith("mixture:"):
        try:
            c = float(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid mixture weight in {text!r}") from None
        if not 0.0 <= c <= 1.0:
            raise argparse.ArgumentTypeError("mixture weight must lie in [0, 1]")
        return ("mixture", c)
    raise argparse.ArgumentTypeError(f"unknown distribution {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="improved-hoeffding",
        description="Skew-aware Hoeffding tail bounds for sums of bounded zero-mean variables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, intervals=True):
        if intervals:
            p.add_argument("--intervals", required=True, help="CSV file with header a,b")
        p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("bound", help="one- or two-sided tail bounds")
    common(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--form", choices=["sum", "mean"], default="sum")
    p.add_argument("--sided", choices=["one", "two", "both"], default="one")
    p.add_argument("--kind", choices=["improved", "original", "both"], default="improved")

    p = sub.add_parser("lemma", help="certify the MGF bound on an s-grid")
    common(p, intervals=False)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s-max", type=float, default=10.0)
    p.add_argument("--s-steps", type=int, default=200)
    p.add_argument("--kind", choices=["improved", "original"], default="improved")

    p = sub.add_parser("simulate", help="Monte Carlo tail against the improved bound")
    common(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--form", choices=["sum", "mean"], default="sum")
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--dist", type=_dist_spec, default=("two-point", 1.0),
                   help="two-point or mixture:<c>")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("invert", help="sample size for (t, delta) or deviation for delta")
    p.add_argument("--intervals", help="CSV file; solves for t instead of n")
    p.add_argument("--out")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--sided", choices=["one", "two"], default="one")
    p.add_argument("--kind", choices=["improved", "original"], default="improved")

    p = sub.add_parser("compare", help="improved vs original bound over a t-grid")
    common(p)
    p.add_argument("--t-grid", type=_t_grid, required=True, help="start:stop:steps")
    p.add_argument("--form", choices=["sum", "mean"], default="sum")
    p.add_argument("--sided", choices=["one", "two"], default="one")
    return parser


def _load(path) -> IntervalSet:
    try:
        ivs = read_intervals(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except IntervalError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not ivs:
        raise UsageError(f"{path}: no intervals")
    return IntervalSet(tuple(ivs))


def _positive(name, value):
    if value is None:
        raise UsageError(f"--{name} is required")
    if not math.isfinite(value) or value <= 0:
        raise UsageError(f"{name} must be positive")
    return value


def _kinds(choice):
    if choice == "both":
        return [MgfBoundKind.IMPROVED, MgfBoundKind.ORIGINAL]
    return [MgfBoundKind(choice)]


def _sides(choice):
    if choice == "both":
        return [Sidedness.ONE, Sidedness.TWO]
    return [Sidedness(choice)]


def cmd_bound(args) -> tuple[int, list[str]]:
    t = _positive("t", args.t)
    ivs = _load(args.intervals)
    form = DeviationForm(args.form)
    rows = [REPORT_HEADER]
    for side in _sides(args.sided):
        for kind in _kinds(args.kind):
            rows.append(report_row(tail_bound(ivs, t, form, side, kind)))
    return 0, rows


def _interval_arg(args):
    if args.a is None or args.b is None:
        raise UsageError("--a and --b are required")
    try:
        return make_interval(args.a, args.b)
    except IntervalError as exc:
        raise UsageError(f"invalid interval: {exc}") from None


def cmd_lemma(args) -> tuple[int, list[str]]:
    iv = _interval_arg(args)
    s_max = _positive("s-max", args.s_max)
    if args.s_steps < 1:
        raise UsageError("s-steps must be positive")
    report = harness.verify_lemma(iv, s_max, args.s_steps, MgfBoundKind(args.kind))
    return (0 if report.passed else 1), report.rows()


SIMULATE_HEADER = "estimate,ci_upper_99,bound,pass"


def cmd_simulate(args) -> tuple[int, list[str]]:
    t = _positive("t", args.t)
    if args.reps < 1:
        raise UsageError("reps must be positive")
    if args.workers < 1:
        raise UsageError("workers must be positive")
    ivs = _load(args.intervals)
    form = DeviationForm(args.form)
    name, c = args.dist
    if name == "two-point":
        dists = [harness.extremal_two_point(iv) for iv in ivs]
    else:
        dists = [harness.zero_mean_mixture(iv, c) for iv in ivs]
    est = harness.empirical_tail(ivs, dists, t, form, args.reps, args.seed, workers=args.workers)
    bound = one_sided_bound(ivs, t, form, MgfBoundKind.IMPROVED).bound_improved
    ok = est.ci_upper_99 <= bound
    row = f"{fmt(est.estimate)},{fmt(est.ci_upper_99)},{fmt(bound)},{str(ok).lower()}"
    return (0 if ok else 1), [SIMULATE_HEADER, row]


def cmd_invert(args) -> tuple[int, list[str]]:
    delta = args.delta
    if not (math.isfinite(delta) and 0.0 < delta < 1.0):
        raise UsageError("delta must lie in (0, 1)")
    kind = MgfBoundKind(args.kind)
    if args.intervals:
        ivs = _load(args.intervals)
        side = Sidedness(args.sided)
        t = invert_for_t(ivs, delta, side, kind)
        return 0, ["n_vars,delta,sidedness,kind,t",
                   f"{len(ivs)},{fmt(delta)},{side.value},{kind.value},{fmt(t)}"]
    iv = _interval_arg(args)
    t = _positive("t", args.t)
    n = invert_for_n(iv, t, delta, kind)
    return 0, ["a,b,t,delta,kind,n",
               f"{fmt(iv.a)},{fmt(iv.b)},{fmt(t)},{fmt(delta)},{kind.value},{n}"]


def cmd_compare(args) -> tuple[int, list[str]]:
    ivs = _load(args.intervals)
    form = DeviationForm(args.form)
    side = Sidedness(args.sided)
    rows = ["t,improved,original,ratio"]
    for t in args.t_grid.values():
        rep = tail_bound(ivs, float(t), form, side)
        # ratio in log space survives underflow of both bounds
        ratio = math.exp(rep.log_bound_improved - rep.log_bound_original)
        rows.append(",".join(fmt(v) for v in (t, rep.bound_improved, rep.bound_original, ratio)))
    return 0, rows


COMMANDS = {
    "bound": cmd_bound,
    "lemma": cmd_lemma,
    "simulate": cmd_simulate,
    "invert": cmd_invert,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, rows = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 1
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
