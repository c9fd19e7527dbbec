"""Bounded supports [a, b] with a < 0 < b and their per-interval scales."""
from __future__ import annotations

import csv
import enum
import io
import math
import numbers
from dataclasses import dataclass
from pathlib import Path


class IntervalError(ValueError):
    """Raised when endpoints do not describe a valid support."""


class SkewClass(enum.Enum):
    RIGHT = "right"  # b >= -a
    LEFT = "left"  # b < -a


class TailDirection(enum.Enum):
    UPPER = "upper"  # P(sum >= t), Chernoff parameter s > 0
    LOWER = "lower"  # P(-sum >= t), handled by reflection


@dataclass(frozen=True)
class Interval:
    """Support of a zero-mean bounded variable. Build with :func:`make_interval`."""

    a: float
    b: float

    def __post_init__(self):
        _validate(self.a, self.b)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def A(self) -> float:
        return arithmetic_mean(self)

    @property
    def G(self) -> float:
        return geometric_mean(self)

    @property
    def lam(self) -> float:
        return lam(self)

    @property
    def skew(self) -> SkewClass:
        return skew_class(self)


def _validate(a, b):
    if not (isinstance(a, numbers.Real) and isinstance(b, numbers.Real)):
        raise IntervalError(f"endpoints must be real numbers, got a={a!r}, b={b!r}")
    if not math.isfinite(a):
        raise IntervalError(f"a must be finite, got {a!r}")
    if not math.isfinite(b):
        raise IntervalError(f"b must be finite, got {b!r}")
    if a >= 0:
        raise IntervalError(f"a must be negative, got a={a!r}")
    if b <= 0:
        raise IntervalError(f"b must be positive, got b={b!r}")
    if not a < b:
        raise IntervalError(f"a must be less than b, got a={a!r}, b={b!r}")
    if not math.isfinite(b - a):
        raise IntervalError(f"width b - a overflows for a={a!r}, b={b!r}")


def make_interval(a: float, b: float) -> Interval:
    """Validate endpoints and return an :class:`Interval`.

    Raises :class:`IntervalError` naming the failed condition (a not
    negative, b not positive, non-finite endpoint, a >= b).
    """
    try:
        a, b = float(a), float(b)
    except (TypeError, ValueError):
        raise IntervalError(f"endpoints must be real numbers, got a={a!r}, b={b!r}") from None
    return Interval(a, b)


def arithmetic_mean(iv: Interval) -> float:
    """A = (b + |a|) / 2."""
    return 0.5 * (iv.b - iv.a)


def geometric_mean(iv: Interval) -> float:
    """G = sqrt(|a| b), clipped at A so rounding never breaks G <= A."""
    prod = -iv.a * iv.b
    if math.isfinite(prod) and prod > 0.0:
        return min(math.sqrt(prod), arithmetic_mean(iv))
    # |a|*b over/underflowed; take roots separately
    return min(math.sqrt(-iv.a) * math.sqrt(iv.b), arithmetic_mean(iv))


def lam(iv: Interval) -> float:
    """Weight -a / (b - a) that the extremal two-point law puts on b."""
    return -iv.a / (iv.b - iv.a)


def skew_class(iv: Interval) -> SkewClass:
    # tie b == -a goes to RIGHT (non-strict inequality)
    return SkewClass.RIGHT if iv.b >= -iv.a else SkewClass.LEFT


def reflect(iv: Interval) -> Interval:
    """Support of -X when X lives on ``iv``: [-b, -a]."""
    return Interval(-iv.b, -iv.a)


def subgaussian_scale(iv: Interval, direction: TailDirection = TailDirection.UPPER) -> float:
    """Scale sigma with E[exp(sX)] <= exp(s^2 sigma^2 / 2) on the given tail side.

    For the upper tail (s > 0) this is A on right-skewed supports and G on
    left-skewed ones. The lower tail uses the reflected support.
    """
    if direction is TailDirection.LOWER:
        iv = reflect(iv)
    if skew_class(iv) is SkewClass.LEFT:
        return geometric_mean(iv)
    return arithmetic_mean(iv)


def parse_intervals(text: str) -> list[Interval]:
    """Parse the ``a,b`` CSV format. Lines starting with ``#`` are skipped.

    Errors name the offending line (1-based, counting the header).
    """
    rows = []
    header_seen = False
    reader = csv.reader(io.StringIO(text))
    for lineno, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip():
            continue
        if row[0].lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if cells != ["a", "b"]:
                raise IntervalError(f"row {lineno}: expected header 'a,b', got {','.join(cells)!r}")
            header_seen = True
            continue
        if len(cells) != 2:
            raise IntervalError(f"row {lineno}: expected 2 columns, got {len(cells)}")
        try:
            a, b = float(cells[0]), float(cells[1])
        except ValueError:
            raise IntervalError(f"row {lineno}: not a number: {','.join(cells)!r}") from None
        try:
            rows.append(make_interval(a, b))
        except IntervalError as exc:
            raise IntervalError(f"row {lineno}: {exc}") from None
    if not header_seen:
        raise IntervalError("missing header 'a,b'")
    return rows


def read_intervals(path: str | Path) -> list[Interval]:
    return parse_intervals(Path(path).read_text(encoding="utf-8"))


def format_intervals(intervals) -> str:
    lines = ["a,b"] + [f"{iv.a!r},{iv.b!r}" for iv in intervals]
    return "\n".join(lines) + "\n"
