"""Tail bounds for S_n = X_1 + ... + X_n with independent zero-mean X_i in [a_i, b_i].

Chernoff with the per-variable MGF bounds gives

    P(S_n >= t) <= exp(-s t + s^2 M^2 / 2),   minimised at s = t / M^2,

where M^2 sums A_i^2 over right-skewed supports and G_i^2 over left-skewed
ones. The lower tail swaps the roles (N^2), since -X_i lives on the
reflected support. All bounds are formed in log space and exponentiated
once.

Two conventions for the deviation ``t`` are supported (:class:`DeviationForm`):
``SUM`` means ``S_n >= t``, ``MEAN`` means ``S_n / n >= t``. The mean form at
``t`` is exactly the sum form at ``n t``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .interval import (
    Interval,
    SkewClass,
    arithmetic_mean,
    geometric_mean,
    skew_class,
)
from .mgf import MgfBoundKind, bound_scale


class DeviationForm(enum.Enum):
    SUM = "sum"
    MEAN = "mean"


class Sidedness(enum.Enum):
    ONE = "one"
    TWO = "two"


@dataclass(frozen=True)
class IntervalSet:
    items: tuple[Interval, ...]

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValueError("no intervals")
        for i, iv in enumerate(items):
            if not isinstance(iv, Interval):
                raise TypeError(f"item {i} is not an Interval: {iv!r}")
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def n(self) -> int:
        return len(self.items)

    @classmethod
    def repeat(cls, iv: Interval, n: int) -> "IntervalSet":
        return cls((iv,) * n)


def as_interval_set(intervals) -> IntervalSet:
    if isinstance(intervals, IntervalSet):
        return intervals
    return IntervalSet(tuple(intervals))


@dataclass(frozen=True)
class MixedScales:
    """Squared scale sums for a family of supports.

    ``m_sq`` drives the upper tail, ``n_sq`` the lower one. Averaged
    variants (the ``bar_*`` properties) divide by ``n``.
    """

    m_sq: float
    n_sq: float
    sum_a_sq: float
    sum_g_sq: float
    n: int

    @property
    def bar_m(self) -> float:
        return math.sqrt(self.m_sq / self.n)

    @property
    def bar_n(self) -> float:
        return math.sqrt(self.n_sq / self.n)

    @property
    def bar_a(self) -> float:
        return math.sqrt(self.sum_a_sq / self.n)

    @property
    def bar_g(self) -> float:
        return math.sqrt(self.sum_g_sq / self.n)

    def __add__(self, other: "MixedScales") -> "MixedScales":
        return MixedScales(
            self.m_sq + other.m_sq,
            self.n_sq + other.n_sq,
            self.sum_a_sq + other.sum_a_sq,
            self.sum_g_sq + other.sum_g_sq,
            self.n + other.n,
        )

    def scale_sq(self, kind: MgfBoundKind) -> float:
        """Upper-tail squared scale for the given bound kind."""
        return self.m_sq if kind is MgfBoundKind.IMPROVED else self.sum_a_sq


@dataclass(frozen=True)
class TailBoundReport:
    """Improved and original bounds at one deviation.

    Bounds that underflow double precision stay available exactly through
    the ``log_*`` fields. ``optimal_s`` is the Chernoff parameter for S_n
    minimising the upper-tail exponent under ``kind``.
    """

    log_bound_improved: float
    log_bound_original: float
    scales: MixedScales
    optimal_s: float
    sidedness: Sidedness
    form: DeviationForm
    t: float
    kind: MgfBoundKind = MgfBoundKind.IMPROVED

    @property
    def bound_improved(self) -> float:
        return math.exp(self.log_bound_improved)

    @property
    def bound_original(self) -> float:
        return math.exp(self.log_bound_original)

    @property
    def log_bound(self) -> float:
        if self.kind is MgfBoundKind.IMPROVED:
            return self.log_bound_improved
        return self.log_bound_original

    @property
    def bound(self) -> float:
        return math.exp(self.log_bound)


REPORT_HEADER = "n,m_sq,n_sq,sum_a_sq,sum_g_sq,t,form,sidedness,kind,bound,optimal_s"


def fmt(x: float) -> str:
    return f"{x:.17g}"


def report_row(report: TailBoundReport) -> str:
    sc = report.scales
    cells = [
        str(sc.n),
        fmt(sc.m_sq),
        fmt(sc.n_sq),
        fmt(sc.sum_a_sq),
        fmt(sc.sum_g_sq),
        fmt(report.t),
        report.form.value,
        report.sidedness.value,
        report.kind.value,
        fmt(report.bound),
        fmt(report.optimal_s),
    ]
    return ",".join(cells)


def index_sets(intervals) -> tuple[list[int], list[int]]:
    """Split indices into right-skewed (I, ties included) and left-skewed (J)."""
    right, left = [], []
    for i, iv in enumerate(as_interval_set(intervals)):
        (right if skew_class(iv) is SkewClass.RIGHT else left).append(i)
    return right, left


def _squares(iv: Interval) -> tuple[float, float]:
    a = arithmetic_mean(iv)
    g = geometric_mean(iv)
    return a * a, min(g * g, a * a)


def mixed_scales(intervals) -> MixedScales:
    ivs = as_interval_set(intervals)
    right, left = index_sets(ivs)
    sq = [_squares(iv) for iv in ivs]
    # fsum keeps permutation invariance exact
    m_sq = math.fsum([sq[i][0] for i in right] + [sq[j][1] for j in left])
    n_sq = math.fsum([sq[j][0] for j in left] + [sq[i][1] for i in right])
    return MixedScales(
        m_sq=m_sq,
        n_sq=n_sq,
        sum_a_sq=math.fsum(a for a, _ in sq),
        sum_g_sq=math.fsum(g for _, g in sq),
        n=ivs.n,
    )


def _check_t(t):
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise ValueError(f"t must be finite, got {t!r}")
    if t <= 0:
        raise ValueError("t must be positive")


def _sum_deviation(t: float, n: int, form: DeviationForm) -> float:
    return n * t if form is DeviationForm.MEAN else t


def _log_gauss(t_sum: float, scale_sq: float) -> float:
    return -(t_sum * t_sum) / (2.0 * scale_sq)


def _log_pair(la: float, lb: float) -> float:
    hi, lo = max(la, lb), min(la, lb)
    return min(0.0, hi + math.log1p(math.exp(lo - hi)))


def one_sided_bound(
    intervals,
    t: float,
    form: DeviationForm = DeviationForm.SUM,
    kind: MgfBoundKind = MgfBoundKind.IMPROVED,
) -> TailBoundReport:
    """Bound on P(S_n >= t) (or P(S_n / n >= t) in mean form)."""
    _check_t(t)
    sc = mixed_scales(intervals)
    ts = _sum_deviation(t, sc.n, form)
    return TailBoundReport(
        log_bound_improved=_log_gauss(ts, sc.m_sq),
        log_bound_original=_log_gauss(ts, sc.sum_a_sq),
        scales=sc,
        optimal_s=ts / sc.scale_sq(kind),
        sidedness=Sidedness.ONE,
        form=form,
        t=t,
        kind=kind,
    )


def two_sided_bound(
    intervals,
    t: float,
    form: DeviationForm = DeviationForm.SUM,
    kind: MgfBoundKind = MgfBoundKind.IMPROVED,
) -> TailBoundReport:
    """Union bound on P(|S_n| >= t): upper tail with M^2 plus lower tail with N^2.

    The original counterpart is 2 exp(-t^2 / (2 sum A_i^2)). Both are clamped
    at 1. ``optimal_s`` refers to the upper-tail term.
    """
    _check_t(t)
    sc = mixed_scales(intervals)
    ts = _sum_deviation(t, sc.n, form)
    log_orig = _log_gauss(ts, sc.sum_a_sq)
    return TailBoundReport(
        log_bound_improved=_log_pair(_log_gauss(ts, sc.m_sq), _log_gauss(ts, sc.n_sq)),
        log_bound_original=min(0.0, math.log(2.0) + log_orig),
        scales=sc,
        optimal_s=ts / sc.scale_sq(kind),
        sidedness=Sidedness.TWO,
        form=form,
        t=t,
        kind=kind,
    )


def tail_bound(intervals, t, form, sidedness: Sidedness, kind=MgfBoundKind.IMPROVED):
    fn = one_sided_bound if sidedness is Sidedness.ONE else two_sided_bound
    return fn(intervals, t, form, kind)


def iid_one_sided_bound(
    iv: Interval,
    n: int,
    t: float,
    form: DeviationForm = DeviationForm.MEAN,
    kind: MgfBoundKind = MgfBoundKind.IMPROVED,
) -> float:
    """exp(-(t / sigma)^2 n / 2) for n variables sharing the support ``iv``.

    ``t`` is a deviation of the sample mean in MEAN form; in SUM form it is
    first divided by n.
    """
    _check_t(t)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    sigma = bound_scale(iv, kind)
    tm = t / n if form is DeviationForm.SUM else t
    return math.exp(-0.5 * (tm / sigma) ** 2 * n)


def standardized_bound(k: float, n: int) -> float:
    """exp(-k^2 n / 2), with k the mean deviation in units of the averaged scale."""
    if not (isinstance(k, (int, float)) and math.isfinite(k)) or k <= 0:
        raise ValueError(f"k must be positive and finite, got {k!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return math.exp(-0.5 * k * k * n)


def _check_delta(delta):
    if not (isinstance(delta, (int, float)) and 0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")


def invert_for_n(
    iv: Interval, t: float, delta: float, kind: MgfBoundKind = MgfBoundKind.IMPROVED
) -> int:
    """Smallest n with the iid mean-form bound at deviation t no larger than delta."""
    _check_t(t)
    _check_delta(delta)
    sigma = bound_scale(iv, kind)
    n = max(1, math.ceil(2.0 * sigma * sigma * math.log(1.0 / delta) / (t * t)))

    def ok(m):
        return iid_one_sided_bound(iv, m, t, DeviationForm.MEAN, kind) <= delta

    # the ceiling can land one off when the closed form sits on an integer
    while not ok(n):
        n += 1
    while n > 1 and ok(n - 1):
        n -= 1
    return n


def invert_for_t(
    intervals,
    delta: float,
    sidedness: Sidedness = Sidedness.ONE,
    kind: MgfBoundKind = MgfBoundKind.IMPROVED,
    rtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Sum-form deviation t at which the bound equals delta."""
    _check_delta(delta)
    sc = mixed_scales(intervals)
    log_delta = math.log(delta)
    if sidedness is Sidedness.ONE:
        return math.sqrt(sc.scale_sq(kind) * 2.0 * -log_delta)
    if kind is MgfBoundKind.ORIGINAL:
        return math.sqrt(sc.sum_a_sq * 2.0 * math.log(2.0 / delta))

    def excess(t):
        return _log_pair(_log_gauss(t, sc.m_sq), _log_gauss(t, sc.n_sq)) - log_delta

    big = max(sc.m_sq, sc.n_sq)
    # one term alone already exceeds delta at lo; both are at most delta/2 at hi
    lo = math.sqrt(big * 2.0 * -log_delta)
    hi = math.sqrt(big * 2.0 * math.log(2.0 / delta))
    # either end may be the exact root (e.g. M = N); widen past rounding
    while excess(lo) < 0:
        lo *= 0.5
    while excess(hi) > 0:
        hi *= 2.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)
