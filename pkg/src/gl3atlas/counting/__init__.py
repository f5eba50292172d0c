"""Point counts on elliptic curves and on the twisted double-cover surfaces."""

from .curves import CurveSpec, ec_ap, load_curves
from .fit import CandidateSet, VerifyFailed, boundary_traces, frobenius_fit, power_sums
from .surface import (
    BadPrime,
    CountRecord,
    NonRationalValue,
    SurfaceParams,
    WorkBudgetExceeded,
    count_table,
    default_rmax,
    surface_char_sum,
    twisted_count,
)

__all__ = [
    "BadPrime",
    "CandidateSet",
    "CountRecord",
    "CurveSpec",
    "NonRationalValue",
    "SurfaceParams",
    "VerifyFailed",
    "WorkBudgetExceeded",
    "boundary_traces",
    "count_table",
    "default_rmax",
    "ec_ap",
    "frobenius_fit",
    "load_curves",
    "power_sums",
    "surface_char_sum",
    "twisted_count",
]
