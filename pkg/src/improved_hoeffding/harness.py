"""Numerical certification of the MGF lemma and the tail bounds.

The checks rest on one fact: among all mean-zero laws on [a, b], the
two-point law on {a, b} has the largest MGF for every s (convexity of
x -> e^{sx}). So checking the bound against the two-point MGF certifies it
for every mean-zero law on the support, and random finite laws are used to
check that extremality itself.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special, stats

from . import rng
from .interval import Interval, SkewClass, lam, skew_class
from .mgf import (
    MgfBoundKind,
    curvature_cap,
    log_mgf_bound,
    log_two_point_mgf,
    psi_second,
)
from .tail import DeviationForm, as_interval_set

SUM_TOL = 1e-12
MEAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Finite-support mean-zero law hosted on ``interval``."""

    support: np.ndarray
    probs: np.ndarray
    interval: Interval

    def __post_init__(self):
        x = np.asarray(self.support, dtype=float).ravel()
        p = np.asarray(self.probs, dtype=float).ravel()
        if x.shape != p.shape or x.size == 0:
            raise ValueError("support and probs must be non-empty and of equal length")
        if np.any(p < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(math.fsum(p) - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {math.fsum(p)!r}, not 1")
        iv = self.interval
        if x.min() < iv.a or x.max() > iv.b:
            raise ValueError(f"support leaves [{iv.a}, {iv.b}]")
        if abs(math.fsum(p * x)) > MEAN_TOL * iv.width:
            raise ValueError(f"mean {math.fsum(p * x)!r} is not zero")
        x.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "support", x)
        object.__setattr__(self, "probs", p)

    @property
    def mean(self) -> float:
        return math.fsum(self.probs * self.support)


def _two_point(iv: Interval, lo: float, hi: float, weight: float = 1.0):
    """Support/prob arrays of ``weight`` times the mean-zero law on {lo, hi}."""
    p_hi = -lo / (hi - lo)
    return np.array([lo, hi]), weight * np.array([1.0 - p_hi, p_hi])


def extremal_two_point(iv: Interval) -> DiscreteDistribution:
    w = lam(iv)
    return DiscreteDistribution(np.array([iv.a, iv.b]), np.array([1.0 - w, w]), iv)


def zero_mean_mixture(iv: Interval, c: float) -> DiscreteDistribution:
    """Mass c spread as the extremal two-point law, 1 - c at zero."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"c must lie in [0, 1], got {c!r}")
    w = lam(iv)
    return DiscreteDistribution(
        np.array([iv.a, 0.0, iv.b]), np.array([c * (1.0 - w), 1.0 - c, c * w]), iv
    )


def random_zero_mean(iv: Interval, gen: np.random.Generator, max_pairs: int = 6) -> DiscreteDistribution:
    """Random finite mean-zero law on ``iv``.

    A random convex combination of two-point laws {x1 < 0 < x2} inside the
    support, plus optionally an atom at zero. Each component has mean zero by
    construction, so no renormalisation is needed.
    """
    k = int(gen.integers(1, max_pairs + 1))
    lows = iv.a * gen.uniform(0.0, 1.0, k)
    highs = iv.b * gen.uniform(0.0, 1.0, k)
    # guard against a zero draw collapsing a pair
    lows = np.where(lows == 0.0, iv.a, lows)
    highs = np.where(highs == 0.0, iv.b, highs)
    weights = gen.dirichlet(np.ones(k + 1))
    if gen.uniform() < 0.5:
        weights[-1] = 0.0
        weights /= weights.sum()
    xs, ps = [np.array([0.0])], [np.array([weights[-1]])]
    for lo, hi, wt in zip(lows, highs, weights[:-1]):
        x, p = _two_point(iv, lo, hi, wt)
        xs.append(x)
        ps.append(p)
    return DiscreteDistribution(np.concatenate(xs), np.concatenate(ps), iv)


def log_mgf(dist: DiscreteDistribution, s: float) -> float:
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    return float(special.logsumexp(s * dist.support, b=dist.probs))


def mgf(dist: DiscreteDistribution, s: float) -> float:
    """E[e^{sX}] for the finite law."""
    value = log_mgf(dist, s)
    if value > 709.0:
        raise OverflowError(f"MGF overflows at s={s!r}; use log_mgf")
    return math.exp(value)


# --- lemma certification -------------------------------------------------------

LEMMA_TOL = 1e-12


@dataclass
class LemmaReport:
    interval: Interval
    s_grid: np.ndarray
    margins: np.ndarray  # log bound - log two-point MGF
    kind: MgfBoundKind = MgfBoundKind.IMPROVED

    @property
    def min_margin(self) -> float:
        return float(self.margins.min())

    @property
    def argmin_s(self) -> float:
        return float(self.s_grid[int(np.argmin(self.margins))])

    @property
    def passed(self) -> bool:
        return bool(np.all(self.margins >= -LEMMA_TOL))

    def rows(self) -> list[str]:
        return ["s,margin"] + [f"{s:.17g},{m:.17g}" for s, m in zip(self.s_grid, self.margins)]


def lemma_grid(s_max: float, s_steps: int) -> np.ndarray:
    """Log-spaced grid of ``s_steps`` points ending at ``s_max``, spanning 4 decades."""
    if not (math.isfinite(s_max) and s_max > 0):
        raise ValueError(f"s_max must be positive, got {s_max!r}")
    if not isinstance(s_steps, (int, np.integer)) or s_steps < 1:
        raise ValueError(f"s_steps must be a positive integer, got {s_steps!r}")
    if s_steps == 1:
        return np.array([float(s_max)])
    return np.geomspace(s_max * 1e-4, s_max, int(s_steps))


def verify_lemma(
    iv: Interval, s_max: float, s_steps: int, kind: MgfBoundKind = MgfBoundKind.IMPROVED
) -> LemmaReport:
    grid = lemma_grid(s_max, s_steps)
    margins = np.array([log_mgf_bound(iv, s, kind) - log_two_point_mgf(iv, s) for s in grid])
    return LemmaReport(iv, grid, margins, kind)


@dataclass
class ExtremalityReport:
    passed: bool
    worst_gap: float  # min over trials of log two-point MGF - log MGF
    trials: int


def verify_extremality(iv: Interval, s: float, trials: int, seed: int = 0) -> ExtremalityReport:
    """MGF of ``trials`` random mean-zero laws never exceeds the two-point MGF."""
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    gen = np.random.default_rng(seed)
    top = log_two_point_mgf(iv, s)
    worst = math.inf
    for _ in range(int(trials)):
        gap = top - log_mgf(random_zero_mean(iv, gen), s)
        worst = min(worst, gap)
    # relative MGF tolerance 1e-12 is log1p(1e-12) in log space
    return ExtremalityReport(worst >= -math.log1p(1e-12), worst, int(trials))


@dataclass
class PsiMaxReport:
    passed: bool
    max_value: float
    argmax_mu: float
    cap: float


def verify_psi_second_max(
    iv: Interval, mu_grid_size: int, mu_max: float = 50.0, tol: float = 1e-15
) -> PsiMaxReport:
    """psi'' on [0, mu_max] stays under lam(1-lam) (left-skewed) or 1/4 (otherwise).

    For left-skewed supports the maximum must also sit at mu = 0.
    """
    if mu_grid_size < 2:
        raise ValueError("mu_grid_size must be at least 2")
    mu = np.linspace(0.0, mu_max, int(mu_grid_size))
    vals = psi_second(iv, mu)
    k = int(np.argmax(vals))
    cap = curvature_cap(iv)
    ok = bool(np.all(vals <= cap + tol))
    if skew_class(iv) is SkewClass.LEFT:
        ok = ok and k == 0
    return PsiMaxReport(ok, float(vals[k]), float(mu[k]), cap)


# --- Monte Carlo tails ----------------------------------------------------------

CI_LEVEL = 0.99
DEFAULT_CHUNK = 1 << 15


def clopper_pearson_upper(hits: int, reps: int, level: float = CI_LEVEL) -> float:
    """One-sided exact binomial upper confidence limit."""
    if hits >= reps:
        return 1.0
    return float(stats.beta.ppf(level, hits + 1, reps - hits))


@dataclass(frozen=True)
class TailEstimate:
    hits: int
    reps: int
    seed: int
    ci_upper_99: float

    @property
    def estimate(self) -> float:
        return self.hits / self.reps


def _check_dists(intervals, dists):
    ivs = as_interval_set(intervals)
    if len(dists) != len(ivs):
        raise ValueError(f"{len(dists)} distributions for {len(ivs)} intervals")
    for i, (iv, d) in enumerate(zip(ivs, dists)):
        if d.support.min() < iv.a or d.support.max() > iv.b:
            raise ValueError(f"distribution {i} is not supported on interval {i}")
    return ivs


def _threshold_hits(sums: np.ndarray, t: float, n: int, form: DeviationForm) -> np.ndarray:
    if form is DeviationForm.MEAN:
        return sums / n >= t
    return sums >= t


def _chunk_hits(dists, cdfs, t, form, seed, start, stop) -> int:
    u = rng.uniforms(seed, np.arange(start, stop, dtype=np.uint64), len(dists))
    total = np.zeros(stop - start)
    for i, (d, cdf) in enumerate(zip(dists, cdfs)):
        idx = np.minimum(np.searchsorted(cdf, u[:, i], side="right"), d.support.size - 1)
        total += d.support[idx]
    return int(np.count_nonzero(_threshold_hits(total, t, len(dists), form)))


def empirical_tail(
    intervals,
    dists: Sequence[DiscreteDistribution],
    t: float,
    form: DeviationForm = DeviationForm.SUM,
    reps: int = 100_000,
    seed: int = 0x5EED,
    workers: int = 1,
    chunk: int = DEFAULT_CHUNK,
) -> TailEstimate:
    """Monte Carlo estimate of P(S_n >= t) (or P(S_n / n >= t)).

    Replication r draws its variables from ``rng.uniforms(seed, [r], n)``,
    so the hit count does not depend on ``workers`` or ``chunk``.
    """
    _check_dists(intervals, dists)
    if not isinstance(reps, (int, np.integer)) or reps < 1:
        raise ValueError(f"reps must be a positive integer, got {reps!r}")
    cdfs = [np.cumsum(d.probs) for d in dists]
    bounds = [(lo, min(lo + chunk, reps)) for lo in range(0, reps, chunk)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda b: _chunk_hits(dists, cdfs, t, form, seed, *b), bounds)
            )
    else:
        parts = [_chunk_hits(dists, cdfs, t, form, seed, *b) for b in bounds]
    hits = sum(parts)
    return TailEstimate(hits, int(reps), int(seed), clopper_pearson_upper(hits, int(reps)))


def exact_tail(
    dists: Sequence[DiscreteDistribution],
    t: float,
    form: DeviationForm = DeviationForm.SUM,
    max_outcomes: int = 1 << 20,
) -> float:
    """P(S_n >= t) by enumerating every joint outcome.

    Partial sums are accumulated in variable order, as in
    :func:`empirical_tail`, so both see the same floating-point sums.
    """
    count = math.prod(d.support.size for d in dists)
    if count > max_outcomes:
        raise ValueError(f"{count} outcomes exceed the enumeration cap {max_outcomes}")
    sums = np.zeros(1)
    probs = np.ones(1)
    for d in dists:
        sums = (sums[:, None] + d.support[None, :]).ravel()
        probs = (probs[:, None] * d.probs[None, :]).ravel()
    hit = _threshold_hits(sums, t, len(dists), form)
    return math.fsum(probs[hit])
