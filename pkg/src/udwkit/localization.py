r"""Overlap of covariant position states and its Compton-scale expansion.

States created by the field operator carry a 1/sqrt(2E(p)) measure, so two of
them at spatial separation r are not orthogonal; their inner product is

    <x|y> = M K1(M r) / ((2 pi)^2 r),      r = |x - y| > 0,

which decays exponentially on the Compton scale 1/M.  Newton-Wigner states
are orthogonal (a delta distribution) and are never evaluated pointwise here;
all first-versus-second comparisons go through Gaussian test-function
smearing, where the delta is replaced by its momentum-space regularization.

``overlap_fourier_oracle`` recomputes the kernel from the defining momentum
integral rather than from Bessel-function code: below ``Mr = 4`` it sums the
oscillatory radial Fourier integral between consecutive sine zeros and
accelerates the alternating partial sums; above, where the oscillatory sum
would cancel by a factor ~e^{Mr} and drown in roundoff, it integrates the
contour-rotated (exponentially damped) form of the same integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import integrate_adaptive
from .specfun import DomainError, bessel_k1_scaled

_TWO_PI_SQ = (2.0 * math.pi) ** 2


@dataclass(frozen=True)
class OverlapQuery:
    mass: float
    separation: float

    def __post_init__(self):
        if not (self.mass > 0.0):
            raise DomainError(f"mass must be > 0, got {self.mass}")
        if not (self.separation > 0.0):
            raise DomainError(f"separation must be > 0, got {self.separation}")


def overlap_kernel(q: OverlapQuery) -> float:
    """M K1(M r) / ((2 pi)^2 r); underflows to 0 where the true value does."""
    x = q.mass * q.separation
    scaled = q.mass * bessel_k1_scaled(x) / (_TWO_PI_SQ * q.separation)
    if x <= 700.0:
        return scaled * math.exp(-x)
    log_value = math.log(scaled) - x
    return math.exp(log_value) if log_value > -745.0 else 0.0


def log_overlap_kernel(q: OverlapQuery) -> float:
    """log of the overlap kernel, stable for arbitrarily large M r."""
    x = q.mass * q.separation
    return math.log(q.mass * bessel_k1_scaled(x) / (_TWO_PI_SQ * q.separation)) - x


def _radial_fourier_oscillatory(mass: float, r: float, tol: float) -> float:
    """INT_0^inf p sin(pr)/sqrt(p^2+M^2) dp via zero-splitting + acceleration.

    The integrand is regularized by splitting off the Abel-summable free part:
    INT sin(pr) dp = 1/r, leaving (p/E - 1) sin(pr) whose half-period panels
    decay like 1/k^2 and alternate; repeated pairwise averaging of the partial
    sums (Euler transformation) then converges geometrically.
    """
    def damped(p: float) -> float:
        return (p / math.hypot(p, mass) - 1.0) * math.sin(p * r)

    n_terms = 48
    panel_abs = 1e-15 * max(1.0, 1.0 / r) / n_terms
    terms = []
    for k in range(n_terms):
        lo = k * math.pi / r
        hi = (k + 1) * math.pi / r
        res = integrate_adaptive(damped, lo, hi, rel_tol=1e-12, abs_tol=panel_abs,
                                 max_evals=50_000)
        terms.append(res.value)
    partial = np.cumsum(terms)
    while len(partial) > n_terms // 2:
        partial = 0.5 * (partial[:-1] + partial[1:])
    return 1.0 / r + float(partial[len(partial) // 2])


def _radial_fourier_rotated(mass: float, r: float, tol: float) -> float:
    """Same integral from the contour-rotated form M INT e^{-Mr cosh u} cosh u du."""
    x = mass * r
    u_max = math.acosh(745.0 / x) if x < 745.0 else 1e-6
    f = lambda u: math.exp(-x * math.cosh(u)) * math.cosh(u)
    res = integrate_adaptive(f, 0.0, u_max, rel_tol=min(tol, 1e-13), abs_tol=1e-320)
    return mass * res.value


def overlap_fourier_oracle(q: OverlapQuery, tol: float = 1e-9) -> float:
    """Overlap kernel recomputed from its defining radial Fourier integral."""
    mass, r = q.mass, q.separation
    x = mass * r
    if x < 4.0:
        j = _radial_fourier_oscillatory(mass, r, tol)
    else:
        j = _radial_fourier_rotated(mass, r, tol)
    return j / (_TWO_PI_SQ * r)


# --- Gaussian-smeared expansion ----------------------------------------------

@dataclass(frozen=True)
class ComptonExpansion:
    """Smeared second-quantized overlap versus its Compton-scale expansion.

    The diagonal overlap smeared with a normalized Gaussian test function of
    width sigma has the exact momentum-space form
    ``INT d^3p |g(p)|^2 / (2 E(p))`` with ``|g(p)|^2`` Gaussian; expanding
    ``1/E`` around p = 0 gives
    ``(1/2M) (1 - (3/8)(lc/sigma)^2 + (45/128)(lc/sigma)^4 - ...)`` where the
    quadratic coefficient 3/8 is the second moment of the test function under
    the Laplacian term of the kernel expansion.
    """

    mass: float
    sigma: float
    order: int
    coefficients: tuple[float, ...]
    predicted: float
    integrated: float

    @property
    def rel_difference(self) -> float:
        return abs(self.predicted - self.integrated) / abs(self.integrated)


C2_SMEARED = 3.0 / 8.0
C4_SMEARED = 45.0 / 128.0


def smeared_overlap(mass: float, sigma: float, separation: float = 0.0,
                    rel_tol: float = 1e-12) -> float:
    """INT d^3p |g(p)|^2 e^{i p.d} / (2 E(p)) for Gaussian test functions.

    ``g`` is the momentum-space transform of a normalized Gaussian of width
    sigma; for separation d > 0 the angular average contributes sinc(p d).
    """
    if sigma <= 0.0 or mass <= 0.0:
        raise DomainError("smeared_overlap requires mass > 0 and sigma > 0")
    norm = (2.0 * sigma * sigma / math.pi) ** 1.5 * 4.0 * math.pi

    def integrand(p: float) -> float:
        gauss = math.exp(-2.0 * sigma * sigma * p * p)
        osc = 1.0 if separation == 0.0 else (
            math.sin(p * separation) / (p * separation) if p > 0.0 else 1.0)
        return norm * p * p * gauss * osc / (2.0 * math.hypot(p, mass))

    p_max = 28.0 / sigma  # exp(-2 sigma^2 p^2) below double-precision floor
    seeds = [0.5 / sigma, 1.0 / sigma, 2.0 / sigma]
    res = integrate_adaptive(integrand, 0.0, p_max, rel_tol=rel_tol,
                             abs_tol=1e-300, seeds=seeds)
    return res.value


def compton_expansion(mass: float, sigma: float, order: int = 2,
                      rel_tol: float = 1e-12) -> ComptonExpansion:
    """Compare the smeared overlap with its expansion through the given order."""
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    ratio = 1.0 / (mass * sigma)  # lambda_c / sigma
    if not (1.0 / ratio > 10.0):
        raise ValueError(f"expansion regime requires sigma/lambda_c > 10, "
                         f"got {1.0 / ratio:.3f}")
    coeffs = [1.0]
    predicted = 1.0
    if order >= 2:
        coeffs.append(-C2_SMEARED)
        predicted -= C2_SMEARED * ratio * ratio
    predicted /= 2.0 * mass
    integrated = smeared_overlap(mass, sigma, rel_tol=rel_tol)
    return ComptonExpansion(
        mass=mass,
        sigma=sigma,
        order=order,
        coefficients=tuple(coeffs),
        predicted=predicted,
        integrated=integrated,
    )
