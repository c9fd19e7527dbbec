"""Moment generating function of a zero-mean variable on [a, b] and its bounds.

Everything is parametrised by the interval through ``lam = -a / (b - a)``,
the probability the extremal two-point law puts on ``b``. With
``u = s (b - a)`` the extremal MGF is ``exp(psi(u))`` where

    psi(u) = -lam u + log(1 - lam + lam e^u),

and ``psi''(mu) = tau(mu) (1 - tau(mu))``. The bounds below replace
``psi''`` by its maximum over ``mu >= 0``: 1/4 on right-skewed supports,
``lam (1 - lam)`` on left-skewed ones.

The ``log_*`` variants return exponents and never overflow; the plain
variants raise :class:`MgfOverflowError` instead of returning ``inf``.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .interval import (
    Interval,
    SkewClass,
    TailDirection,
    arithmetic_mean,
    lam,
    skew_class,
    subgaussian_scale,
)

# above this u, e^u is replaced by e^{-u} algebra
PSI_SWITCH = 30.0


class MgfOverflowError(OverflowError):
    pass


class MgfBoundKind(enum.Enum):
    ORIGINAL = "original"  # scale A on every support
    IMPROVED = "improved"  # A if right-skewed, G if left-skewed


def _as_nonneg(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if np.any(arr < 0):
        raise ValueError(f"{name} must be non-negative")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _psi_any(w, u):
    """psi for any real u (u < 0 covers the s < 0 side of the two-point MGF)."""
    u = np.asarray(u, dtype=float)
    small = np.minimum(u, PSI_SWITCH)
    big = np.maximum(u, PSI_SWITCH)
    with np.errstate(over="ignore", invalid="ignore"):
        lo = -w * small + np.log1p(w * np.expm1(small))
        hi = (1.0 - w) * big + np.log(w + (1.0 - w) * np.exp(-big))
    return np.where(u <= PSI_SWITCH, lo, hi)


def psi(iv: Interval, u):
    """psi(u) = -lam u + log(1 - lam + lam e^u) for u >= 0 (scalar or array)."""
    u = _as_nonneg(u, "u")
    return _out(_psi_any(lam(iv), u))


def tau(iv: Interval, mu):
    """tau(mu) = lam / (lam + (1 - lam) e^{-mu}); increases from lam towards 1."""
    mu = _as_nonneg(mu, "mu")
    w = lam(iv)
    return _out(w / (w + (1.0 - w) * np.exp(-mu)))


def psi_second(iv: Interval, mu):
    """psi''(mu) = tau (1 - tau), with 1 - tau formed directly to avoid cancellation."""
    mu = _as_nonneg(mu, "mu")
    w = lam(iv)
    tail = (1.0 - w) * np.exp(-mu)
    denom = w + tail
    return _out((w / denom) * (tail / denom))


def curvature_cap(iv: Interval) -> float:
    """sup over mu >= 0 of psi''(mu): 1/4, or lam (1 - lam) when left-skewed."""
    if skew_class(iv) is SkewClass.LEFT:
        w = lam(iv)
        return min(w * (1.0 - w), 0.25)
    return 0.25


def psi_quadratic_bound(iv: Interval, u):
    """Upper bound 0.5 * cap * u^2 on psi(u), u >= 0."""
    u = _as_nonneg(u, "u")
    return _out(0.5 * curvature_cap(iv) * u * u)


def log_two_point_mgf(iv: Interval, s: float) -> float:
    """log E[e^{sX}] for X on {a, b} with mean zero. Any finite s."""
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    return float(_psi_any(lam(iv), s * iv.width))


def two_point_mgf(iv: Interval, s: float) -> float:
    """(1 - lam) e^{sa} + lam e^{sb}, the largest MGF of any mean-zero law on [a, b]."""
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    w = lam(iv)
    try:
        return (1.0 - w) * math.exp(s * iv.a) + w * math.exp(s * iv.b)
    except OverflowError:
        raise MgfOverflowError(
            f"two-point MGF overflows at s={s!r}; use log_two_point_mgf"
        ) from None


def bound_scale(iv: Interval, kind: MgfBoundKind) -> float:
    if kind is MgfBoundKind.ORIGINAL:
        return arithmetic_mean(iv)
    return subgaussian_scale(iv, TailDirection.UPPER)


def log_mgf_bound(iv: Interval, s: float, kind: MgfBoundKind = MgfBoundKind.IMPROVED) -> float:
    """Exponent s^2 sigma^2 / 2 of the MGF bound, s > 0 only.

    The left-skewed G-scale is only established for s > 0; for the lower tail
    pass ``reflect(iv)`` with a positive s instead.
    """
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    if s <= 0:
        raise ValueError(
            f"s must be positive (got {s!r}); reflect the interval to bound the lower tail"
        )
    sigma = bound_scale(iv, kind)
    return 0.5 * (s * sigma) ** 2


def mgf_bound(iv: Interval, s: float, kind: MgfBoundKind = MgfBoundKind.IMPROVED) -> float:
    expo = log_mgf_bound(iv, s, kind)
    try:
        return math.exp(expo)
    except OverflowError:
        raise MgfOverflowError(f"MGF bound overflows at s={s!r}; use log_mgf_bound") from None
