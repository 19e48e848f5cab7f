r"""Numerically stable scalar kernels.

The four kernels below are the only nontrivial scalar functions the rate and
template machinery needs:

* ``ell`` -- the kinematic kernel
  :math:`\ell(a,b;c^2) = \tfrac12(\sqrt{(a+b)^2+c^2} - \sqrt{(a-b)^2+c^2})`
  shared by every template function.  It is stored with a *signed* ``c^2``
  because the physical argument is negative for subluminal media while
  ``c`` itself would be imaginary; keeping ``c^2`` keeps all arithmetic real.
  The difference of roots cancels catastrophically when ``a >> b`` or when
  ``c^2`` approaches ``-(a-b)^2``, so the default evaluation is the conjugate
  form ``2ab / (sqrt((a+b)^2+c2) + sqrt((a-b)^2+c2))``, exact by the identity
  ``(a+b)^2 - (a-b)^2 = 4ab``.

* ``bessel_k1_scaled`` -- :math:`e^x K_1(x)`.  The rates only ever need the
  exponentially scaled product, which stays representable for arbitrarily
  large argument.  Ascending series below x = 2; Chebyshev fits of
  :math:`e^x K_1(x)\sqrt{x}` in the variable 16/x above (coefficients
  generated from a 40-digit reference evaluation at Chebyshev nodes and
  frozen here; both fits are accurate to ~3e-15 relative).

* ``hyp_u`` -- Tricomi's confluent hypergeometric function U(a, b, z) for
  a > 0, z > 0, evaluated from the Laplace integral representation
  :math:`U = z^{-a}/\Gamma(a)\int_0^\infty e^{-u} u^{a-1} (1+u/z)^{b-a-1} du`
  after the substitution u = s^2, which removes the endpoint singularity for
  a >= 1/2 and compactifies the domain to s < 27.3 in double precision.

* ``sinh_ratio`` -- sinh(x)/x with its removable singularity, plus a
  log-space companion for arguments beyond the exp overflow boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quadrature import integrate_adaptive

# Relative clamp for roundoff-negative radicands in ell(); anything more
# negative is a logic error upstream and must surface loudly.
TOL_CLAMP = 1e-12

_EULER_GAMMA = 0.5772156649015328606065120900824024


class DomainError(ValueError):
    """Argument outside the mathematical domain of a kernel."""


@dataclass(frozen=True)
class EllArgs:
    """Arguments of the kinematic kernel; c2 is signed, a and b are >= 0."""

    a: float
    b: float
    c2: float
    label: str = ""


def _clamped_radicand(value: float, scale: float, args: EllArgs) -> float:
    if value >= 0.0:
        return value
    if value >= -TOL_CLAMP * scale:
        return 0.0
    raise DomainError(
        f"negative radicand {value:.6e} (scale {scale:.6e}) in ell"
        f"({args.a}, {args.b}, c2={args.c2})"
        + (f" for {args.label}" if args.label else "")
    )


def ell(args: EllArgs) -> float:
    """Kinematic kernel, cancellation-free for all in-scope parameter sets."""
    a, b, c2 = args.a, args.b, args.c2
    if a < 0.0 or b < 0.0:
        raise DomainError(f"ell requires a, b >= 0, got a={a}, b={b}")
    if a == 0.0 or b == 0.0:
        return 0.0
    scale = (a + b) ** 2 + abs(c2)
    rp = _clamped_radicand((a + b) ** 2 + c2, scale, args)
    rm = _clamped_radicand((a - b) ** 2 + c2, scale, args)
    return 2.0 * a * b / (math.sqrt(rp) + math.sqrt(rm))


# --- modified Bessel K1, exponentially scaled -------------------------------

# Chebyshev coefficients of f(x) = e^x K1(x) sqrt(x):
# mid range x in [2, 8] with u = (16/x - 5)/3, far range x in [8, inf) with
# u = 16/x - 1.  Frozen from a 40-digit reference; see module docstring.
_K1E_CHEB_MID = (
    +2.774431340697387949e+00, +7.571989953199378953e-02, -1.441051556475490521e-03,
    +6.650116955148482358e-05, -4.369984709651220101e-06, +3.540277498680611637e-07,
    -3.311163820053108249e-08, +3.445977913275354936e-09, -3.898934850190891564e-10,
    +4.720893761381935592e-11, -6.047709341863502846e-12, +8.139642805924898070e-13,
    -1.136270564818285330e-13, +1.758422467463997960e-14, -2.254606757700318171e-15,
    +3.416070845000481852e-16, -1.281026566875180756e-16,
)
_K1E_CHEB_FAR = (
    +2.563793083437390319e+00, +2.832887813049744102e-02, -2.475370673906172685e-04,
    +5.771972451756441165e-06, -2.068939221483007597e-07, +9.739983315608487383e-09,
    -5.585340053707673607e-10, +3.733008773893359248e-11, -2.825227231649198541e-12,
    +2.378610129373835498e-13, -2.160664809462804627e-14, +3.142785177400443403e-15,
)


def _cheb_eval(coeffs: tuple[float, ...], u: float) -> float:
    d = 0.0
    dd = 0.0
    for c in coeffs[:0:-1]:
        d, dd = 2.0 * u * d - dd + c, d
    return u * d - dd + 0.5 * coeffs[0]


def _bessel_i1(x: float) -> float:
    # Ascending series of I1, used only for x <= 2 where it converges fast.
    t = 0.25 * x * x
    term = 0.5 * x
    total = term
    k = 1
    while True:
        term *= t / (k * (k + 1))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            return total
        k += 1


def _k1_small(x: float) -> float:
    # K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1)+psi(k+2)] t^k/(k!(k+1)!)
    t = 0.25 * x * x
    psi_a = -_EULER_GAMMA        # psi(1)
    psi_b = 1.0 - _EULER_GAMMA   # psi(2)
    coeff = 1.0                  # t^k / (k! (k+1)!)
    total = psi_a + psi_b
    k = 0
    while True:
        k += 1
        psi_a += 1.0 / k
        psi_b += 1.0 / (k + 1)
        coeff *= t / (k * (k + 1))
        term = (psi_a + psi_b) * coeff
        total += term
        if abs(term) <= 1e-18 * abs(total):
            break
    return 1.0 / x + math.log(0.5 * x) * _bessel_i1(x) - 0.25 * x * total


def bessel_k1_scaled(x: float) -> float:
    """e^x K1(x) for x > 0; relative accuracy ~1e-13 over [1e-8, 1e12]."""
    if not (x > 0.0):
        raise DomainError(f"bessel_k1_scaled requires x > 0, got {x}")
    if x <= 2.0:
        return math.exp(x) * _k1_small(x)
    if x <= 8.0:
        return _cheb_eval(_K1E_CHEB_MID, (16.0 / x - 5.0) / 3.0) / math.sqrt(x)
    return _cheb_eval(_K1E_CHEB_FAR, 16.0 / x - 1.0) / math.sqrt(x)


def bessel_k1(x: float) -> float:
    """K1(x); underflows to zero for x beyond ~745 as the true value does."""
    if not (x > 0.0):
        raise DomainError(f"bessel_k1 requires x > 0, got {x}")
    if x <= 2.0:
        return _k1_small(x)
    return bessel_k1_scaled(x) * math.exp(-x)


# --- Tricomi U --------------------------------------------------------------

def hyp_u(a: float, b: float, z: float, *, rel_tol: float = 5e-14) -> float:
    """U(a, b, z) for a > 0, z > 0 via the Laplace integral representation."""
    if not (a > 0.0):
        raise DomainError(f"hyp_u requires a > 0, got a={a}")
    if not (z > 0.0):
        raise DomainError(f"hyp_u requires z > 0, got z={z}")

    power = b - a - 1.0
    two_am1 = 2.0 * a - 1.0

    def integrand(s: float) -> float:
        if s == 0.0:
            return 1.0 if two_am1 == 0.0 else (0.0 if two_am1 > 0.0 else math.inf)
        return math.exp(-s * s) * s ** two_am1 * (1.0 + s * s / z) ** power

    # The (1 + s^2/z) factor changes scale near s = sqrt(z); seed splits there
    # so the adaptive refinement starts from sensible panels.
    s_max = 27.5
    sz = math.sqrt(z)
    seeds = [sz * m for m in (0.25, 1.0, 4.0, 16.0) if 1e-12 < sz * m < s_max]
    res = integrate_adaptive(integrand, 0.0, s_max, rel_tol=rel_tol, seeds=seeds)
    return 2.0 * z ** (-a) / math.gamma(a) * res.value


# --- sinh(x)/x --------------------------------------------------------------

_SINH_OVERFLOW = 700.0


def sinh_ratio(x: float) -> float:
    """sinh(x)/x with the removable singularity filled in.

    Overflows (as math.inf) past x ~ 713; callers needing large arguments
    should use :func:`log_sinh_ratio`.
    """
    if x < 0.0:
        raise DomainError(f"sinh_ratio requires x >= 0, got {x}")
    if x < 1e-4:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return math.sinh(x) / x


def log_sinh_ratio(x: float) -> float:
    """log(sinh(x)/x), exact in log space for arbitrarily large x."""
    if x < 0.0:
        raise DomainError(f"log_sinh_ratio requires x >= 0, got {x}")
    if x < 1e-4:
        return math.log1p(x * x / 6.0 * (1.0 + x * x / 20.0))
    if x <= _SINH_OVERFLOW:
        return math.log(math.sinh(x) / x)
    # sinh x = e^x (1 - e^{-2x}) / 2
    return x - math.log(2.0 * x) + math.log1p(-math.exp(-2.0 * x))
