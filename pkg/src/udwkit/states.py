r"""Initial center-of-mass wavepackets reduced to radial weight functions.

Every template function in scope is isotropic, so the 3D rate integral
``INT d^3p |psi(p)|^2 T(p)`` collapses exactly to a 1D integral over the
momentum magnitude against a radial weight ``w(p)`` with unit mass.  For the
built-in Gaussian packet

    psi(p) = (L^2 / 2 pi)^{3/4} exp(-L^2 |p - p_D|^2 / 4)

only the magnitude of the mean momentum matters, and the angular average is
analytic:

    w(p) = (L^2/2pi)^{3/2} 4 pi p^2 exp(-L^2 (p^2 + p_D^2)/2)
           * sinh(L^2 p p_D) / (L^2 p p_D)

For ``L^2 p p_D`` beyond the exp overflow boundary the product is assembled
from the combined exponent ``-L^2 (p - p_D)^2 / 2``, which is always bounded,
so the weight never overflows.

Non-Gaussian states plug in through the same ``WeightFunction`` duck type:
anything with ``weight(p)`` and ``truncation_radius(tail_mass)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from .specfun import sinh_ratio

_EXP_SAFE = 600.0  # switch to the combined-exponent form before exp() limits


@runtime_checkable
class WeightFunction(Protocol):
    """Radial weight: non-negative, unit mass, with a declared tail bound."""

    def weight(self, p: float) -> float: ...

    def truncation_radius(self, tail_mass: float) -> float: ...


@dataclass(frozen=True)
class GaussianState:
    """Gaussian wavepacket of position-space width L and mean momentum p_D."""

    width: float
    mean_momentum: float = 0.0

    def __post_init__(self):
        if not (self.width > 0.0) or not math.isfinite(self.width):
            raise ValueError(f"width must be finite and > 0, got {self.width}")
        if self.mean_momentum < 0.0:
            raise ValueError(f"mean momentum magnitude must be >= 0, got {self.mean_momentum}")

    def weight(self, p: float) -> float:
        return radial_weight(self, p)

    def truncation_radius(self, tail_mass: float) -> float:
        return truncation_radius(self, tail_mass)


def radial_weight(state: GaussianState, p: float) -> float:
    """w(p) >= 0 with INT_0^inf w(p) dp = 1."""
    if p < 0.0:
        raise ValueError(f"momentum magnitude must be >= 0, got {p}")
    ll = state.width * state.width
    pd = state.mean_momentum
    norm = (ll / (2.0 * math.pi)) ** 1.5 * 4.0 * math.pi
    x = ll * p * pd
    half_sq = 0.5 * ll * (p * p + pd * pd)
    if x == 0.0:
        return norm * p * p * math.exp(-half_sq) if half_sq <= 745.0 else 0.0
    if x <= _EXP_SAFE and half_sq <= _EXP_SAFE:
        return norm * p * p * math.exp(-half_sq) * sinh_ratio(x)
    # exp(-L^2(p^2+pd^2)/2) sinh(x)/x = [exp(-L^2(p-pd)^2/2) - exp(-L^2(p+pd)^2/2)]/(2x)
    em = -0.5 * ll * (p - pd) * (p - pd)
    ep = -0.5 * ll * (p + pd) * (p + pd)
    lead = math.exp(em) if em > -745.0 else 0.0
    sub = math.exp(ep) if ep > -745.0 else 0.0
    return norm * p * p * (lead - sub) / (2.0 * x)


def truncation_radius(state: GaussianState, tail_mass: float) -> float:
    """p_max with INT_{p_max}^inf w <= tail_mass (conservative closed bound)."""
    if not (0.0 < tail_mass < 1.0):
        raise ValueError(f"tail mass must be in (0, 1), got {tail_mass}")
    spread = math.sqrt(2.0 * (-math.log(tail_mass))) / state.width
    return state.mean_momentum + spread + 5.0 / state.width
