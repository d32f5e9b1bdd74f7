"""The Weinstein kernel ``Lambda(lam, x) = exp(-i <x', lam'>) j_alpha(x_{d+1} lam_{d+1})``."""
from __future__ import annotations

import itertools

import numpy as np

from .errors import NumericalQualityError, ValidationError
from .special import AlphaParam, bessel_j_normalized


def reflect(x):
    """``-x = (-x', x_{d+1})``: negate all but the last coordinate."""
    x = np.array(x, copy=True)
    x[..., :-1] = -x[..., :-1]
    return x


def weinstein_kernel(p: AlphaParam, lam, x):
    """Kernel values, broadcasting ``lam`` and ``x`` over leading axes.

    ``lam`` may be complex (the entire extension); ``x`` is real.
    """
    lam = np.asarray(lam)
    x = np.asarray(x, dtype=float)
    if lam.shape[-1] != p.ndim or x.shape[-1] != p.ndim:
        raise ValidationError(f"points must have {p.ndim} coordinates")
    phase = np.sum(x[..., :-1] * lam[..., :-1], axis=-1)
    radial = bessel_j_normalized(p.alpha, x[..., -1] * lam[..., -1])
    return np.exp(-1j * phase) * radial


def imag_norm(lam) -> np.ndarray:
    """Euclidean norm of the vector of imaginary parts."""
    return np.linalg.norm(np.imag(np.asarray(lam, dtype=complex)), axis=-1)


def kernel_bound(lam, x, order=0):
    """``||x||^order * exp(||x|| ||Im lam||)``."""
    r = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
    return r ** order * np.exp(r * imag_norm(lam))


def _fd_derivative(p, nu, lam, x, h):
    # central differences, one axis at a time; |nu| <= 2
    stencils = {0: ((0, 1.0),), 1: ((1, 0.5), (-1, -0.5)), 2: ((1, 1.0), (0, -2.0), (-1, 1.0))}
    axes = [stencils[k] for k in nu]
    total = 0j
    for combo in itertools.product(*axes):
        shift = np.array([s for s, _ in combo], dtype=float)
        coef = np.prod([c for _, c in combo])
        total += coef * weinstein_kernel(p, lam + h * shift, x)
    return total / h ** sum(nu)


def kernel_derivative_bound_check(p: AlphaParam, nu, lam, x, h=1e-3):
    """Check ``|D^nu Lambda(lam, x)| <= ||x||^{|nu|} e^{||x|| ||Im lam||}``.

    The derivative is a central finite difference in the complex ``lam``
    components; the same difference at ``h/2`` guards the step choice.
    Returns a dict with ``lhs``, ``rhs`` and ``ok``.
    """
    nu = tuple(int(k) for k in nu)
    if len(nu) != p.ndim or any(k < 0 for k in nu):
        raise ValidationError(f"multi-index must have {p.ndim} nonnegative entries")
    if sum(nu) > 2 or any(k > 2 for k in nu):
        raise ValidationError("only |nu| <= 2 is supported")
    lam = np.asarray(lam, dtype=complex)
    x = np.asarray(x, dtype=float)
    rhs = float(kernel_bound(lam, x, sum(nu)))
    d1 = _fd_derivative(p, nu, lam, x, h)
    d2 = _fd_derivative(p, nu, lam, x, h / 2)
    lhs = float(abs(d2))
    # Richardson difference estimates the truncation error of the finer step
    err = abs(d1 - d2) / 3.0
    scale = max(rhs, np.finfo(float).tiny)
    if rhs > 0 and err > 0.05 * scale:
        raise NumericalQualityError(
            f"finite-difference error {err:.3g} exceeds 5% of the bound {rhs:.3g}; "
            f"try a smaller step than h={h}"
        )
    if sum(nu) and rhs > 0 and np.finfo(float).eps / h ** sum(nu) > 0.05 * scale:
        raise NumericalQualityError(
            f"rounding error dominates at h={h} for |nu|={sum(nu)}; increase the step"
        )
    ok = lhs <= rhs * 1.05 + (err if rhs == 0 else 0.0)
    return {"lhs": lhs, "rhs": rhs, "fd_error": float(err), "ok": bool(ok)}
