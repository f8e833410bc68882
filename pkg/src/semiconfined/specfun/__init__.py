"""Overflow-safe special functions."""

from .gamma import log_gamma, log_pochhammer, pochhammer_int, rgamma
from .hypergeometric import SeriesControl, kummer_1f1, kummer_series
from .orthopoly import hermite, laguerre
from .parabolic import log_table_integral, pcf_d, pcf_d_log
from .quadrature import integrate_batch
from .scaled import ScaledComplex, log_sum_exp, scaled_sum, wrap_phase

__all__ = [
    "ScaledComplex", "SeriesControl", "hermite", "integrate_batch", "kummer_1f1",
    "kummer_series", "laguerre", "log_gamma", "log_pochhammer", "log_sum_exp",
    "log_table_integral", "pcf_d", "pcf_d_log", "pochhammer_int", "rgamma",
    "scaled_sum", "wrap_phase",
]
