"""Detector template functions and spontaneous-emission rates.

Public API re-exports; see the module docstrings for the physics conventions
(natural units, Compton-unit scaling, first-quantized coupling).
"""

from .params import (
    COMPARABLE_MODELS,
    Coupling,
    DetectorParams,
    Medium,
    TemplateModel,
    ValidationReport,
    to_compton_units,
    validate,
)
from .quadrature import QuadratureError, QuadratureResult, integrate_adaptive
from .specfun import DomainError, EllArgs, bessel_k1, bessel_k1_scaled, ell, hyp_u, sinh_ratio
from .states import GaussianState, WeightFunction, radial_weight, truncation_radius
from .templates import TemplateQuery, template, template_oracle, template_sweep
from .rates import (
    RateConvergenceError,
    RateMethod,
    RateResult,
    fractional_rate_difference,
    rate_analytic_vacuum,
    rate_expansion_large_L,
    rate_limit_small_mass,
    rate_quadrature,
)
from .localization import (
    ComptonExpansion,
    OverlapQuery,
    compton_expansion,
    log_overlap_kernel,
    overlap_fourier_oracle,
    overlap_kernel,
    smeared_overlap,
)

__version__ = "0.1.0"

__all__ = [
    "COMPARABLE_MODELS",
    "ComptonExpansion",
    "Coupling",
    "DetectorParams",
    "DomainError",
    "EllArgs",
    "GaussianState",
    "Medium",
    "OverlapQuery",
    "QuadratureError",
    "QuadratureResult",
    "RateConvergenceError",
    "RateMethod",
    "RateResult",
    "TemplateModel",
    "TemplateQuery",
    "ValidationReport",
    "WeightFunction",
    "bessel_k1",
    "bessel_k1_scaled",
    "compton_expansion",
    "ell",
    "fractional_rate_difference",
    "hyp_u",
    "integrate_adaptive",
    "log_overlap_kernel",
    "overlap_fourier_oracle",
    "overlap_kernel",
    "radial_weight",
    "rate_analytic_vacuum",
    "rate_expansion_large_L",
    "rate_limit_small_mass",
    "rate_quadrature",
    "sinh_ratio",
    "smeared_overlap",
    "template",
    "template_oracle",
    "template_sweep",
    "to_compton_units",
    "truncation_radius",
    "validate",
]
