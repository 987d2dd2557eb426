"""Extreme eigenvalues of Ginibre matrices: exact, asymptotic and simulated laws, and their Gumbel rates."""

from .errors import ConvergenceError, DomainError, GinibreError, SchemeError, SizeError
from .laws import CdfKind, CdfModel, GumbelLaw, cdf_model, gap_prediction, radius_cdf_exact, rate_grid
from .operators import (
    QuadSpec,
    TraceResult,
    det_error_bound,
    fredholm_det_rightmost,
    trace_radius_asymptotic,
    trace_radius_exact,
    trace_rightmost_asymptotic,
    trace_rightmost_quadrature,
)
from .rates import RateReport, fit_rate_constant, gap_scan, kappa_constants, sup_distance, w1_distance
from .sampler import EmpiricalCdf, EntryLaw, SeedSpec, sample_extreme_eig, sample_radius_kostlan
from .scaling import (
    Ensemble,
    ScalingScheme,
    Statistic,
    Variant,
    optimized_scaling,
    rescale_statistic,
    standard_scaling,
    unscale_statistic,
)

__version__ = "0.1.0"
