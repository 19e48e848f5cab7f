r"""Spontaneous-emission rates: quadrature, analytic vacuum forms, limits.

All rates are reported with the first-quantized coupling set to one, i.e. in
units of ``lambda^2 * m`` once parameters are expressed in Compton units.
The corrected second-quantized template already absorbs the coupling-matching
factor, so cross-model numbers are directly comparable.

The vacuum closed forms for a Gaussian packet at rest evaluate the template
integral through a modified Bessel function (first-quantized) and Tricomi's U
(second-quantized).  Note on normalization: the closed forms used here carry
half the prefactor sometimes quoted for them; that normalization is the one
consistent with the defining rate functional ``(lambda^2/2pi) INT |psi|^2 T``,
with the classical rate ``(lambda^2/2pi) E/nu``, with the small-mass limit
``(lambda^2/2pi) E nu/(nu+1)^2``, and with the delta-concentration limit
``rate -> (lambda^2/2pi) T(0)`` as ``L -> inf``; the quadrature and analytic
paths here agree to full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .params import DetectorParams, Medium, TemplateModel, require_valid
from .quadrature import QuadratureError, integrate_adaptive
from .specfun import bessel_k1_scaled, hyp_u
from .states import GaussianState, WeightFunction
from .templates import TemplateQuery, template

_SQRT2 = math.sqrt(2.0)

RELATIVISTIC_PAIR = (TemplateModel.REL_FIRST, TemplateModel.REL_SECOND_CORRECTED)


class RateMethod(Enum):
    QUADRATURE = "quadrature"
    ANALYTIC_VACUUM = "analytic-vacuum"
    EXPANSION = "expansion"


class RateConvergenceError(RuntimeError):
    """Quadrature budget exhausted; carries the best estimate found."""

    def __init__(self, message: str, best_rate: float, achieved_error: float):
        super().__init__(message)
        self.best_rate = best_rate
        self.achieved_error = achieved_error


@dataclass(frozen=True)
class RateResult:
    rate: float
    abs_error_estimate: float
    model: TemplateModel
    method: RateMethod
    params: DetectorParams
    medium: Medium
    state: WeightFunction | None
    coupling_convention: str = "first-quantized"

    def __post_init__(self):
        if self.rate < 0.0 or self.abs_error_estimate < 0.0:
            raise ValueError("rate and error estimate must be non-negative")
        if self.method is RateMethod.ANALYTIC_VACUUM:
            if not (self.medium.is_vacuum and self.model in RELATIVISTIC_PAIR):
                raise ValueError("analytic-vacuum method is restricted to the "
                                 "relativistic pair at nu = 1")


def rate_quadrature(
    model: TemplateModel,
    params: DetectorParams,
    medium: Medium,
    state: WeightFunction,
    rel_tol: float = 1e-9,
) -> RateResult:
    """(1/2pi) INT w(p) T(p) dp by adaptive quadrature."""
    require_valid(params, medium)
    if not (1e-12 <= rel_tol <= 1e-3):
        raise ValueError(f"rel_tol must lie in [1e-12, 1e-3], got {rel_tol}")
    p_max = state.truncation_radius(rel_tol * 1e-3)

    def integrand(p: float) -> float:
        return state.weight(p) * template(TemplateQuery(model, params, medium, p))

    # Seed a split at the weight's peak neighborhood so the first panels
    # already resolve the Gaussian bump.
    seeds = []
    if isinstance(state, GaussianState):
        center = max(state.mean_momentum, 1.0 / state.width)
        seeds = [x for x in (0.5 * center, center, 2.0 * center) if 0.0 < x < p_max]
    try:
        res = integrate_adaptive(integrand, 0.0, p_max, rel_tol=rel_tol, seeds=seeds)
    except QuadratureError as exc:
        best = exc.value / (2.0 * math.pi)
        err = exc.error / (2.0 * math.pi)
        raise RateConvergenceError(
            f"rate quadrature for {model.value} did not reach rel_tol={rel_tol}: "
            f"best estimate {best!r} with error {err:.3e}", best, err) from exc
    return RateResult(
        rate=res.value / (2.0 * math.pi),
        abs_error_estimate=res.error / (2.0 * math.pi),
        model=model,
        method=RateMethod.QUADRATURE,
        params=params,
        medium=medium,
        state=state,
    )


def rate_analytic_vacuum(
    model: TemplateModel,
    params: DetectorParams,
    state: GaussianState,
) -> RateResult:
    """Closed-form vacuum rate for a Gaussian packet at rest."""
    if model not in RELATIVISTIC_PAIR:
        raise ValueError(f"no analytic vacuum rate for model {model.value}")
    if state.mean_momentum != 0.0:
        raise ValueError("analytic vacuum rate requires p_D = 0")
    length = state.width
    mg, me = params.mass_ground, params.mass_excited
    m4_diff = params.mass_sq_diff() * (me * me + mg * mg)  # Me^4 - Mg^4
    if model is TemplateModel.REL_FIRST:
        z = 0.25 * length * length * me * me
        rate = length * m4_diff / (8.0 * math.pi ** 1.5 * _SQRT2 * me * me) \
            * bessel_k1_scaled(z)
    else:
        z = 0.5 * length * length * me * me
        rate = length * m4_diff / (8.0 * math.pi * _SQRT2 * me * me) \
            * hyp_u(0.5, 0.0, z)
    return RateResult(
        rate=rate,
        abs_error_estimate=1e-12 * rate,
        model=model,
        method=RateMethod.ANALYTIC_VACUUM,
        params=params,
        medium=Medium.vacuum(),
        state=state,
    )


def rate_limit_small_mass(model: TemplateModel, gap: float, medium: Medium) -> float:
    """Analytic m -> 0 limit of the rate at fixed gap and fixed L/lambda_c."""
    if not (gap > 0.0):
        raise ValueError(f"gap must be > 0, got {gap}")
    if not (0.0 < medium.nu <= 1.0):
        raise ValueError(f"nu must lie in (0, 1], got {medium.nu}")
    if model in RELATIVISTIC_PAIR:
        nu = medium.nu
        return gap * nu / ((nu + 1.0) ** 2 * 2.0 * math.pi)
    if model in (TemplateModel.SEMI_REL, TemplateModel.NON_REL):
        return 0.0
    raise ValueError(f"no small-mass limit for model {model.value}")


def rate_expansion_large_L(
    model: TemplateModel,
    params: DetectorParams,
    length: float,
    order: int = 2,
) -> float:
    """Wide-packet expansion of the vacuum rate in powers of 1/(L Me)^2.

    The leading term is common to both localizations; the second-order
    coefficients are +3/2 (first-quantized) and -3/2 (second-quantized).
    """
    if model not in RELATIVISTIC_PAIR:
        raise ValueError(f"no wide-packet expansion for model {model.value}")
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    mg, me = params.mass_ground, params.mass_excited
    lm = length * me
    if not (lm > 10.0):
        raise ValueError(f"expansion regime requires L*Me > 10, got {lm}")
    leading = params.mass_sq_diff() * (me * me + mg * mg) / (8.0 * math.pi * me ** 3)
    if order < 2:
        return leading
    sign = 1.0 if model is TemplateModel.REL_FIRST else -1.0
    return leading * (1.0 + sign * 1.5 / (lm * lm))


def fractional_rate_difference(params: DetectorParams, state: GaussianState) -> dict:
    """Vacuum fractional difference between the two localizations.

    Returns the symmetric fractional difference 2|P1 - P2|/(P1 + P2), the
    wide-packet prediction 3/(L Me)^2, and both rates.
    """
    r1 = rate_analytic_vacuum(TemplateModel.REL_FIRST, params, state)
    r2 = rate_analytic_vacuum(TemplateModel.REL_SECOND_CORRECTED, params, state)
    mean = 0.5 * (r1.rate + r2.rate)
    frac = abs(r1.rate - r2.rate) / mean if mean > 0.0 else 0.0
    lm = state.width * params.mass_excited
    return {
        "rate_first": r1.rate,
        "rate_second": r2.rate,
        "fractional_difference": frac,
        "expansion_prediction": 3.0 / (lm * lm),
        "L_times_Me": lm,
    }
