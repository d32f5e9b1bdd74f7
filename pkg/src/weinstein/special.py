"""Normalized Bessel functions, Gamma and the normalization constants.

``j_alpha(z) = Gamma(alpha+1) * sum_k (-1)^k (z/2)^(2k) / (k! Gamma(alpha+k+1))``
is entire and even; it is evaluated through scipy's AMOS-backed ``jv`` away
from the origin and by its power series near it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import DomainError, RangeError

# |z| beyond this makes e^{|Im z|} overflow double precision.
BESSEL_MAX_ARG = 700.0
_SERIES_RADIUS = 1.0


@dataclass(frozen=True)
class AlphaParam:
    """Bessel index ``alpha > -1/2`` together with the dimension ``d >= 1``."""

    alpha: float
    d: int = 1

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha <= -0.5:
            raise DomainError(f"alpha must be > -1/2, got {self.alpha}")
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"d must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))

    @property
    def ndim(self) -> int:
        return self.d + 1

    @property
    def weight_exponent(self) -> float:
        """Exponent ``2 alpha + 1`` of the last coordinate in the measure."""
        return 2.0 * self.alpha + 1.0


def _check_alpha(alpha):
    if not np.isfinite(alpha) or alpha <= -0.5:
        raise DomainError(f"alpha must be > -1/2, got {alpha}")


def bessel_series(alpha, z, tol=1e-18, max_terms=500):
    """Direct power series of ``j_alpha``; reliable only for moderate ``|z|``.

    Uses Neumaier-compensated summation and stops once every term is below
    ``tol`` times its partial sum.
    """
    _check_alpha(alpha)
    z = np.asarray(z, dtype=complex)
    q = -(z * z) / 4.0
    term = np.ones_like(z)
    total = np.ones_like(z)
    comp = np.zeros_like(z)
    for k in range(1, max_terms):
        term = term * q / (k * (alpha + k))
        t = total + term
        big = np.abs(total) >= np.abs(term)
        comp = comp + np.where(big, (total - t) + term, (term - t) + total)
        total = t
        if np.all(np.abs(term) <= tol * np.abs(total + comp)):
            break
    return total + comp


def bessel_j_normalized(alpha, z):
    """Normalized Bessel function ``j_alpha(z)`` for real or complex ``z``.

    Returns a real array for real input and a complex array otherwise.
    ``j_alpha(0) = 1`` and ``|j_alpha(x)| <= 1`` for real ``x``.
    """
    _check_alpha(alpha)
    z_in = np.asarray(z)
    is_real = not np.iscomplexobj(z_in)
    z = z_in.astype(complex)
    if z.size and np.max(np.abs(z)) > BESSEL_MAX_ARG:
        raise RangeError(
            f"|z| = {np.max(np.abs(z)):.4g} exceeds the Bessel working range "
            f"{BESSEL_MAX_ARG}",
        )
    # evenness: move to the right half-plane, away from the branch cut
    z = np.where(z.real < 0, -z, z)
    out = np.empty_like(z)
    small = np.abs(z) <= _SERIES_RADIUS
    if np.any(small):
        out[small] = bessel_series(alpha, z[small])
    real_axis = ~small & (z.imag == 0)
    if np.any(real_axis):
        xr = z[real_axis].real
        out[real_axis] = sp.jv(alpha, xr) * np.exp(sp.gammaln(alpha + 1)
                                                   - alpha * np.log(xr / 2))
    # j_alpha(i y) = Gamma(alpha+1) (y/2)^{-alpha} I_alpha(y), real and positive
    imag_axis = ~small & (z.real == 0) & ~real_axis
    if np.any(imag_axis):
        y = np.abs(z[imag_axis].imag)
        out[imag_axis] = sp.ive(alpha, y) * np.exp(sp.gammaln(alpha + 1)
                                                   - alpha * np.log(y / 2) + y)
    rest = ~(small | real_axis | imag_axis)
    if np.any(rest):
        zb = z[rest]
        out[rest] = sp.gamma(alpha + 1) * (zb / 2) ** (-alpha) * sp.jv(alpha, zb)
    if is_real:
        out = out.real
    return out if out.ndim else out[()]


def log_gamma(x):
    """Natural log of ``Gamma(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def inversion_constant(p: AlphaParam) -> float:
    """``C_{alpha,d} = 1 / ((2 pi)^d 2^{2 alpha} Gamma(alpha+1)^2)``."""
    log_c = -(p.d * math.log(2 * math.pi) + 2 * p.alpha * math.log(2)
              + 2 * log_gamma(p.alpha + 1))
    return math.exp(log_c)


def translation_constant(alpha) -> float:
    """Prefactor ``Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2))``.

    Equal to ``1 / int_0^pi sin^{2 alpha}(theta) d theta``.
    """
    _check_alpha(alpha)
    return math.exp(log_gamma(alpha + 1) - 0.5 * math.log(math.pi)
                    - log_gamma(alpha + 0.5))


def sphere_measure(p: AlphaParam) -> float:
    """Total mass of ``t_{d+1}^{2 alpha+1} d sigma`` on the upper half sphere.

    Closed form ``2 pi^{(d+1)/2} Gamma(alpha+1) / (2 sqrt(pi) Gamma(alpha+d/2+1))``
    generalizes the Wallis integral of the half-circle case.
    """
    a, d = p.alpha, p.d
    return math.exp(
        math.log(math.pi) * (d / 2) + log_gamma(a + 1) - log_gamma(a + d / 2 + 1)
    )
