r"""Template functions for the five center-of-mass models.

The spontaneous-emission rate of a two-level detector factorizes as
``(lambda^2 / 2 pi) * INT d^3p |psi(p)|^2 T(p)``; everything model-specific
lives in the template function ``T(p)``.  This module provides closed forms
for all five models together with an independent oracle that re-derives
``T(p)`` by numerically resolving the energy-conserving delta in the emitted
momentum integral.

Stable evaluation of the relativistic templates
-----------------------------------------------

The textbook closed forms carry a ``1/(1-nu^2)^2`` prefactor against a
bracket that vanishes at the same order, which is catastrophic near the
vacuum.  Instead of series-expanding around ``nu = 1``, the implementation
uses an algebraically exact rearrangement obtained from the emission-window
integral.  With

    Ee      = sqrt(p^2 + Me^2)
    eps     = (1 - nu)(1 + nu)
    Mt2     = Me^2 - Mg^2
    beta-+  = nu*Ee -+ p
    S-+     = sqrt(beta-+^2 + eps*Mt2)

the window endpoints are the positive roots of two quadratics in the emitted
momentum k, and both the window width ``dk`` and midpoint ``kbar`` reduce to
ratios in which every factor of ``eps`` cancels exactly:

    D    = S+ S- + beta+ beta- - eps*Mt2          (all-positive rearrangement
                                                   used when cancellation threatens)
    kbar = 4 nu^2 Mt2 Ee^2 / (D (S+ + S- + 2 nu Ee))
    dk / (2p) = 2 kbar / (S+ + S-)

    T_rel_first   = nu * (dk/2p) * (Ee - nu*kbar)
    T_rel_2nd_raw = nu * (dk/2p) / (4 Ee)

This is finite at p = 0, continuous through nu -> 1, and agrees with the
delta-resolved oracle at machine precision for every subluminal speed.  At
``nu = 1`` exactly the dedicated vacuum forms are used.

The semi-relativistic window changes topology once
``c2 = 2 Mg E - p^2 E / Me`` turns negative (the backward-emission boundary
leaves the physical region): there the window is bounded by the two forward
roots and the template is ``(nu Mg / p) sqrt((p - nu Mg)^2 + c2)``, joining
the small-p form continuously at c2 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .params import DetectorParams, Medium, TemplateModel, require_valid
from .quadrature import bisect_root, integrate_adaptive
from .specfun import DomainError


@dataclass(frozen=True)
class TemplateQuery:
    model: TemplateModel
    params: DetectorParams
    medium: Medium
    p: float

    def __post_init__(self):
        require_valid(self.params, self.medium)
        if not (self.p >= 0.0) or not math.isfinite(self.p):
            raise ValueError(f"momentum must be finite and >= 0, got {self.p}")


def _rel_kinematic_core(params: DetectorParams, nu: float, p: float) -> tuple[float, float, float]:
    """Return (dk/(2p), kbar, Ee) of the relativistic emission window, nu < 1."""
    mg, me = params.mass_ground, params.mass_excited
    mt2 = params.mass_sq_diff()
    ee = math.hypot(p, me)
    eps = (1.0 - nu) * (1.0 + nu)
    beta_m = nu * ee + p
    beta_p = (nu * nu * me * me - eps * p * p) / beta_m
    s_p = math.sqrt(beta_p * beta_p + eps * mt2)
    s_m = math.sqrt(beta_m * beta_m + eps * mt2)
    q = beta_p * beta_m
    sig = s_p + s_m
    if q >= eps * mt2:
        d = s_p * s_m + q - eps * mt2
    else:
        d = 4.0 * eps * nu * nu * mt2 * ee * ee / (s_p * s_m - q + eps * mt2)
    kbar = 4.0 * nu * nu * mt2 * ee * ee / (d * (sig + 2.0 * nu * ee))
    half_dk_over_p = 2.0 * kbar / sig
    return half_dk_over_p, kbar, ee


def _rel_first(params: DetectorParams, nu: float, p: float) -> float:
    mg, me = params.mass_ground, params.mass_excited
    if nu == 1.0:
        # (1/4) (1 - Mg^4/Me^4) sqrt(p^2 + Me^2), written cancellation-free
        mt2 = params.mass_sq_diff()
        return 0.25 * mt2 * (me * me + mg * mg) / me ** 4 * math.hypot(p, me)
    half, kbar, ee = _rel_kinematic_core(params, nu, p)
    return nu * half * (ee - nu * kbar)


def _rel_second_raw(params: DetectorParams, nu: float, p: float) -> float:
    mg, me = params.mass_ground, params.mass_excited
    if nu == 1.0:
        return 0.125 * params.mass_sq_diff() / (me * me * math.hypot(p, me))
    half, _, ee = _rel_kinematic_core(params, nu, p)
    return nu * half / (4.0 * ee)


def _rel_second_corrected(params: DetectorParams, nu: float, p: float) -> float:
    mg, me = params.mass_ground, params.mass_excited
    return 2.0 * (mg * mg + me * me) * _rel_second_raw(params, nu, p)


def _galilean(params: DetectorParams, nu: float, p: float, *, quantized_mass: bool) -> float:
    mg, me = params.mass_ground, params.mass_excited
    gap = params.gap
    b = nu * mg
    if quantized_mass:
        # semi-relativistic: c2 = 2 Mg E - p^2 (1 - Mg/Me), with 1 - Mg/Me = E/Me
        c2 = 2.0 * mg * gap - p * p * (gap / me)
    else:
        c2 = 2.0 * mg * gap
    if c2 < 0.0:
        # forward-bounded window; only reachable for p^2 > 2 Mg Me, so p > 0
        rad = (p - b) * (p - b) + c2
        if rad < 0.0:
            if rad > -1e-12 * (p * p + abs(c2)):
                rad = 0.0
            else:
                raise DomainError(
                    f"semi-relativistic radicand {rad:.3e} < 0 at p={p}, nu={nu}"
                )
        return nu * mg / p * math.sqrt(rad)
    # (b/p) (p - ell(p, b, c2)) with p factored out of ell's conjugate form,
    # which keeps the expression regular at p = 0; radicands are >= 0 here.
    root_sum = math.sqrt((p + b) ** 2 + c2) + math.sqrt((p - b) ** 2 + c2)
    return b * (1.0 - 2.0 * b / root_sum)


def template(q: TemplateQuery) -> float:
    """Template function T(p) >= 0 of the requested model (units of energy)."""
    params, nu, p = q.params, q.medium.nu, q.p
    model = q.model
    if model is TemplateModel.CLASSICAL:
        value = params.gap / nu
    elif model is TemplateModel.REL_FIRST:
        value = _rel_first(params, nu, p)
    elif model is TemplateModel.REL_SECOND_RAW:
        value = _rel_second_raw(params, nu, p)
    elif model is TemplateModel.REL_SECOND_CORRECTED:
        value = _rel_second_corrected(params, nu, p)
    elif model is TemplateModel.SEMI_REL:
        value = _galilean(params, nu, p, quantized_mass=True)
    elif model is TemplateModel.NON_REL:
        value = _galilean(params, nu, p, quantized_mass=False)
    else:  # pragma: no cover
        raise ValueError(f"unhandled model {model}")
    if not math.isfinite(value):
        raise DomainError(f"template({model.value}) produced {value} at p={p}, nu={nu}")
    return value


def template_sweep(
    model: TemplateModel,
    params: DetectorParams,
    medium: Medium,
    p_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """Pointwise template values on a strictly increasing momentum grid."""
    grid = list(p_grid)
    for i in range(1, len(grid)):
        if not grid[i] > grid[i - 1]:
            raise ValueError(f"p_grid not strictly increasing at index {i}")
    out = []
    for i, p in enumerate(grid):
        try:
            out.append((p, template(TemplateQuery(model, params, medium, p))))
        except Exception as exc:
            raise RuntimeError(f"template sweep failed at index {i} (p={p}): {exc}") from exc
    return out


# --- delta-resolved oracle ---------------------------------------------------

_ORACLE_MODELS = (
    TemplateModel.REL_FIRST,
    TemplateModel.REL_SECOND_RAW,
    TemplateModel.REL_SECOND_CORRECTED,
    TemplateModel.SEMI_REL,
    TemplateModel.NON_REL,
)


def _dispersions(model: TemplateModel, params: DetectorParams):
    """(E_g(q), E_g'(q), E_e(p), f_g^2(E), f_e^2(E)) for the oracle."""
    mg, me, gap = params.mass_ground, params.mass_excited, params.gap
    if model in (TemplateModel.REL_FIRST, TemplateModel.REL_SECOND_RAW,
                 TemplateModel.REL_SECOND_CORRECTED):
        e_g = lambda q: math.hypot(q, mg)
        de_g = lambda q: q / math.hypot(q, mg)
        e_e = lambda p: math.hypot(p, me)
    elif model is TemplateModel.SEMI_REL:
        e_g = lambda q: q * q / (2.0 * mg)
        de_g = lambda q: q / mg
        e_e = lambda p: p * p / (2.0 * me) + gap
    elif model is TemplateModel.NON_REL:
        e_g = lambda q: q * q / (2.0 * mg)
        de_g = lambda q: q / mg
        e_e = lambda p: p * p / (2.0 * mg) + gap
    else:
        raise ValueError(f"no delta-resolved oracle for model {model}")
    if model in (TemplateModel.REL_SECOND_RAW, TemplateModel.REL_SECOND_CORRECTED):
        f2 = lambda energy: 2.0 * energy
    else:
        f2 = lambda energy: 1.0
    return e_g, de_g, e_e, f2


def _oracle_at_rest(model: TemplateModel, params: DetectorParams, nu: float) -> float:
    """T(0) from the closed root of E_g(k) + nu*k = E_e(0)."""
    mg, me, gap = params.mass_ground, params.mass_excited, params.gap
    e_g, de_g, e_e, f2 = _dispersions(model, params)
    if model in (TemplateModel.REL_FIRST, TemplateModel.REL_SECOND_RAW,
                 TemplateModel.REL_SECOND_CORRECTED):
        eps = (1.0 - nu) * (1.0 + nu)
        k_star = params.mass_sq_diff() / (nu * me + math.sqrt(me * me - eps * mg * mg))
    else:
        k_star = 2.0 * mg * gap / (nu * mg + math.sqrt(nu * nu * mg * mg + 2.0 * mg * gap))
    value = nu * k_star / (f2(e_g(k_star)) * f2(e_e(0.0)) * (de_g(k_star) + nu))
    if model is TemplateModel.REL_SECOND_CORRECTED:
        value *= 2.0 * (mg * mg + me * me)
    return value


def template_oracle(q: TemplateQuery, *, rel_tol: float = 1e-10) -> float:
    """Re-derive T(p) by resolving the energy delta in the d^3k integral.

    The angular delta fixes ``cos(theta)`` for each emitted momentum k; the
    physical window is where the resolved angle lies in [-1, 1], equivalently
    ``E_g(|k-p|) <= E_e(p) - nu*k <= E_g(k+p)``.  Window endpoints are located
    by bisection on those boundary conditions (never from the closed-form
    quadratics the template functions use) and the remaining 1D integral is
    evaluated adaptively.  Classical is excluded: its template is
    definitionally the heavy-detector limit, not a delta-resolved integral.
    """
    if q.model not in _ORACLE_MODELS:
        raise ValueError(f"no delta-resolved oracle for model {q.model}")
    params, nu, p = q.params, q.medium.nu, q.p
    mg, me = params.mass_ground, params.mass_excited
    e_g, de_g, e_e, f2 = _dispersions(q.model, params)

    if p == 0.0:
        return _oracle_at_rest(q.model, params, nu)

    ee_p = e_e(p)
    k_upper = ee_p / nu

    def g_forward(k: float) -> float:   # zero where cos(theta*) = +1
        return e_g(abs(k - p)) - (ee_p - nu * k)

    def g_backward(k: float) -> float:  # zero where cos(theta*) = -1
        return e_g(k + p) - (ee_p - nu * k)

    def inside(k: float) -> bool:
        r = ee_p - nu * k
        return g_forward(k) <= 0.0 <= g_backward(k) and r >= 0.0

    # Scan for boundary sign changes: log grid over the full range plus a
    # zoom around the rest-frame emission momentum, where the window
    # collapses as p -> 0.
    k0 = k_upper * 1e-13
    grid = np.geomspace(k0, k_upper * (1.0 - 1e-13), 1601)
    k_rest = _oracle_at_rest_root(q.model, params, nu)
    if k_rest is not None and k0 < k_rest < k_upper:
        offsets = np.geomspace(1e-14, 1.0, 120)
        zoom = np.concatenate([k_rest * (1.0 - offsets), k_rest * (1.0 + offsets)])
        zoom = zoom[(zoom > k0) & (zoom < k_upper)]
        grid = np.unique(np.concatenate([grid, zoom]))

    boundaries: list[float] = []
    for g in (g_forward, g_backward):
        vals = np.array([g(k) for k in grid])
        signs = np.sign(vals)
        flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        for i in flips:
            boundaries.append(bisect_root(g, grid[i], grid[i + 1], tol=1e-14))
    boundaries.sort()

    edges = [k0, *boundaries, k_upper]
    segments = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi > lo and inside(0.5 * (lo + hi)):
            segments.append((lo, hi))
    if not segments:
        return 0.0

    if q.model is TemplateModel.REL_FIRST:
        integrand: Callable[[float], float] = lambda k: (nu / (2.0 * p)) * (ee_p - nu * k)
    elif q.model in (TemplateModel.REL_SECOND_RAW, TemplateModel.REL_SECOND_CORRECTED):
        const = nu / (8.0 * p * ee_p)
        if q.model is TemplateModel.REL_SECOND_CORRECTED:
            const *= 2.0 * (mg * mg + me * me)
        integrand = lambda k: const
    else:
        const = nu * mg / (2.0 * p)
        integrand = lambda k: const

    total = 0.0
    for lo, hi in segments:
        res = integrate_adaptive(integrand, lo, hi, rel_tol=rel_tol, abs_tol=1e-300)
        total += res.value
    return total


def _oracle_at_rest_root(model: TemplateModel, params: DetectorParams, nu: float) -> float | None:
    mg, me, gap = params.mass_ground, params.mass_excited, params.gap
    if model in (TemplateModel.REL_FIRST, TemplateModel.REL_SECOND_RAW,
                 TemplateModel.REL_SECOND_CORRECTED):
        eps = (1.0 - nu) * (1.0 + nu)
        return params.mass_sq_diff() / (nu * me + math.sqrt(me * me - eps * mg * mg))
    return 2.0 * mg * gap / (nu * mg + math.sqrt(nu * nu * mg * mg + 2.0 * mg * gap))
