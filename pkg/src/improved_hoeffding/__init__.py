"""Hoeffding-type tail bounds with a geometric-mean scale for left-skewed supports."""

from .interval import (
    Interval,
    IntervalError,
    SkewClass,
    TailDirection,
    arithmetic_mean,
    geometric_mean,
    lam,
    make_interval,
    parse_intervals,
    read_intervals,
    reflect,
    skew_class,
    subgaussian_scale,
)
from .mgf import (
    MgfBoundKind,
    MgfOverflowError,
    log_mgf_bound,
    log_two_point_mgf,
    mgf_bound,
    psi,
    psi_quadratic_bound,
    psi_second,
    tau,
    two_point_mgf,
)
from .tail import (
    DeviationForm,
    IntervalSet,
    MixedScales,
    Sidedness,
    TailBoundReport,
    index_sets,
    iid_one_sided_bound,
    invert_for_n,
    invert_for_t,
    mixed_scales,
    one_sided_bound,
    standardized_bound,
    two_sided_bound,
)

__version__ = "0.1.0"
