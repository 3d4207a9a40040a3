"""Log-domain complex arithmetic, compensated summation and adaptive quadrature."""
from .logcomplex import ONE, ZERO, LogComplex, from_complex, log_add, log_mul, log_pow, log_sum, to_complex, wrap_angle
from .precision import SUPPORTED_PRECISIONS, extended, get_precision, set_precision, working_precision
from .quadrature import (
    Interval,
    QuadratureResult,
    Rectangle,
    VerticalRegion,
    adaptive_integrate,
    gauss_legendre,
    integrate_fundamental_domain,
)
from .summation import CompensatedAccumulator, combine_partials, compensated_sum, logsumexp_complex, reduce_shells

__all__ = [
    "ONE", "ZERO", "LogComplex", "from_complex", "to_complex", "log_add", "log_mul", "log_pow", "log_sum",
    "wrap_angle", "SUPPORTED_PRECISIONS", "extended", "get_precision", "set_precision", "working_precision",
    "Interval", "QuadratureResult", "Rectangle", "VerticalRegion", "adaptive_integrate", "gauss_legendre",
    "integrate_fundamental_domain", "CompensatedAccumulator", "combine_partials", "compensated_sum",
    "logsumexp_complex", "reduce_shells",
]
