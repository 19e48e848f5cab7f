"""Physical parameter types and validation.

Everything downstream works in natural units (hbar = c = 1).  A detector is a
two-level system with rest mass ``m`` and internal gap ``E``; the level
mass-energies are ``M_g = m`` (ground-state internal energy fixed to zero) and
``M_e = m + E``.  The field propagates at speed ``nu <= 1`` with massless
dispersion ``omega(k) = nu*|k|``; ``nu = 1`` is the vacuum and is treated as an
exact branch marker, never as an approximation.

Internally all computations are well conditioned when expressed in Compton
units (m = 1); :func:`to_compton_units` converts dimensional inputs at the
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class TemplateModel(Enum):
    """Center-of-mass model selecting which template function to evaluate.

    ``REL_SECOND_RAW`` keeps the uncorrected second-quantized normalization,
    whose coupling constant has a different dimension; every cross-model
    comparison should use ``REL_SECOND_CORRECTED``, which absorbs the
    coupling-matching factor and is directly comparable to ``REL_FIRST``.
    """

    REL_FIRST = "rel-first"
    REL_SECOND_CORRECTED = "rel-second"
    REL_SECOND_RAW = "rel-second-raw"
    SEMI_REL = "semi-rel"
    NON_REL = "non-rel"
    CLASSICAL = "classical"

    @classmethod
    def from_name(cls, name: str) -> "TemplateModel":
        key = name.strip().lower().replace("_", "-")
        for model in cls:
            if model.value == key:
                return model
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown model {name!r}; expected one of: {valid}")


# Models comparable under the first-quantized coupling convention.
COMPARABLE_MODELS = (
    TemplateModel.REL_FIRST,
    TemplateModel.REL_SECOND_CORRECTED,
    TemplateModel.SEMI_REL,
    TemplateModel.NON_REL,
    TemplateModel.CLASSICAL,
)


@dataclass(frozen=True)
class DetectorParams:
    """Rest mass and internal gap of the detector (natural units)."""

    rest_mass: float
    gap: float

    @property
    def mass_ground(self) -> float:
        return self.rest_mass

    @property
    def mass_excited(self) -> float:
        return self.rest_mass + self.gap

    def compton_wavelength(self) -> float:
        return 1.0 / self.rest_mass

    def mass_sq_diff(self) -> float:
        """M_e^2 - M_g^2 = E*(M_g + M_e), formed without cancellation."""
        return self.gap * (self.mass_ground + self.mass_excited)


@dataclass(frozen=True)
class Medium:
    """Field propagation speed; ``nu = 1`` is the vacuum."""

    nu: float = 1.0

    @classmethod
    def vacuum(cls) -> "Medium":
        return cls(nu=1.0)

    def omega(self, k: float) -> float:
        return self.nu * abs(k)

    @property
    def is_vacuum(self) -> bool:
        return self.nu == 1.0


@dataclass(frozen=True)
class Coupling:
    """Detector-field coupling strength, first-quantized convention."""

    lambda_first: float = 1.0

    def lambda_second(self, params: DetectorParams) -> float:
        """Second-quantized coupling matched so both models agree at p = 0."""
        mg, me = params.mass_ground, params.mass_excited
        return math.sqrt(2.0 * (mg * mg + me * me)) * self.lambda_first


@dataclass(frozen=True)
class ValidationReport:
    """Accumulated invariant violations; empty means all constraints hold."""

    violations: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(params: DetectorParams, medium: Medium) -> ValidationReport:
    """Report every violated invariant of a (detector, medium) pair."""
    problems: list[str] = []
    if not (params.rest_mass > 0.0) or not math.isfinite(params.rest_mass):
        problems.append(f"rest mass must be > 0 and finite, got {params.rest_mass}")
    if not (params.gap > 0.0) or not math.isfinite(params.gap):
        problems.append(f"gap must be > 0 and finite, got {params.gap}")
    if not (0.0 < medium.nu <= 1.0):
        problems.append(f"propagation speed must satisfy 0 < nu <= 1, got {medium.nu}")
    return ValidationReport(tuple(problems))


def require_valid(params: DetectorParams, medium: Medium) -> None:
    report = validate(params, medium)
    if not report.ok:
        raise ValueError("; ".join(report.violations))


def to_compton_units(
    params: DetectorParams,
    *,
    momentum: float | None = None,
    length: float | None = None,
) -> dict[str, float]:
    """Rescale dimensional quantities so the rest mass equals one.

    Energies scale as 1/m, momenta as 1/m and lengths as m (a length L maps to
    L/lambda_c = L*m).  The rescaling is a group action: applying it with mass
    m and then 1/m returns the inputs up to one rounding.
    """
    m = params.rest_mass
    if m <= 0.0:
        raise ValueError(f"rest mass must be > 0, got {m}")
    out = {"rest_mass": 1.0, "gap": params.gap / m}
    if momentum is not None:
        out["momentum"] = momentum / m
    if length is not None:
        out["length"] = length * m
    return out
