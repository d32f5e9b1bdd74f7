"""Spherical-harmonic coefficients, the Hankel reduction, and exponential type.

For ``f`` supported in ``{||x|| < R}`` the transform extends to an entire
function with ``|F f(y)| <= ||f||_{alpha,1} exp(R ||Im y||)``.  Along a ray
``y = i s u`` the log-modulus grows like ``R s`` plus lower-order terms;
:func:`estimate_exponential_type` recovers ``R`` by regressing

    log |F f(i s u)| ~ R s + b sqrt(s) + c log(s) + d

over a window of large ``s``.  The ``sqrt(s)`` and ``log(s)`` terms absorb
the edge behaviour of smooth bumps (a saddle at distance ``~ s^{-1/2}``
from the boundary of the support), which a plain linear fit mistakes for a
smaller type.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from .errors import DomainError, PreconditionError, RangeError, ValidationError
from .grids import SampledFunction, SphereGrid, lp_norm
from .kernel import imag_norm, weinstein_kernel
from .polynomials import EvenPolynomial, evaluate
from .special import BESSEL_MAX_ARG, AlphaParam, bessel_j_normalized
from .transform import forward_at_complex, forward_at_points

DEFAULT_S_GRID = np.linspace(40.0, 120.0, 17)
N_RANDOM_DIRECTIONS = 8


@dataclass
class TypeEstimate:
    R_hat: float
    per_direction: list = field(default_factory=list)
    s_range: tuple = (0.0, 0.0)
    c_used: float = 0.0

    def to_json(self):
        return {
            "R_hat": self.R_hat,
            "s_range": list(self.s_range),
            "c_used": self.c_used,
            "per_direction": [
                {"direction": list(map(float, d["direction"])), "slope": d["slope"],
                 "residual": d["residual"], "local_slopes": list(map(float, d["local_slopes"]))}
                for d in self.per_direction
            ],
        }


def _evaluator(f):
    if isinstance(f, SampledFunction):
        return f.evaluate
    if callable(f):
        return f
    raise ValidationError("expected a SampledFunction or a callable on points")


def angular_coefficient(f, P: EvenPolynomial, lam, sg: SphereGrid):
    """``int_{S_+} f(lam t) P(t) d sigma_alpha(t)`` for each radius in ``lam``."""
    lam = np.asarray(lam, dtype=float)
    fun = _evaluator(f)
    pts = lam[..., None, None] * sg.directions
    vals = np.asarray(fun(pts), dtype=complex)
    return vals @ (evaluate(P, sg.directions) * sg.weights)


def transform_evaluator(f: SampledFunction):
    """Callable ``y -> F f(y)``; complex ``y`` needs a declared support radius."""
    def F(pts):
        pts = np.asarray(pts)
        flat = pts.reshape(-1, pts.shape[-1])
        if np.iscomplexobj(flat) and np.any(flat.imag != 0):
            vals = forward_at_complex(f, flat)
        else:
            vals = forward_at_points(f, flat.real)
        return vals.reshape(pts.shape[:-1])
    return F


def spherical_coefficient(F, P: EvenPolynomial, lam, sg: SphereGrid, power=None):
    """``lam^power * int_{S_+} F(lam t) P(t) d sigma_alpha(t)``.

    ``F`` is a callable on (possibly complex) points or a sampled transform.
    ``power`` defaults to ``-deg P``, which makes the degree-0 coefficient an
    exact multiple of the Hankel transform of the radial profile; pass
    ``power=-1`` for the ``lam^{-1}`` normalization.
    """
    if power is None:
        power = -(P.degree or 0)
    lam = np.asarray(lam, dtype=complex)
    if power < 0 and np.any(lam == 0):
        raise DomainError("lam = 0 is excluded by the negative power prefactor")
    fun = F.evaluate if isinstance(F, SampledFunction) else F
    pts = lam[..., None, None] * sg.directions
    if isinstance(F, SampledFunction):
        if np.any(lam.imag != 0):
            raise ValidationError("sampled transforms can only be read at real lam")
        pts = pts.real
    vals = np.asarray(fun(pts), dtype=complex)
    return lam ** power * (vals @ (evaluate(P, sg.directions) * sg.weights))


def hankel_transform(order, g, lam, r_max=None, n=256):
    """``int_0^inf g(r) j_order(lam r) r^{2 order + 1} dr`` by Gauss-Legendre on ``(0, r_max]``.

    ``g`` is a callable of ``r`` (then ``r_max`` is required) or a tuple
    ``(r, w, values)`` of nodes, plain ``dr`` weights and samples.
    """
    if not order > -0.5:
        raise DomainError(f"Hankel order must exceed -1/2, got {order}")
    if callable(g):
        if r_max is None:
            raise ValidationError("r_max is required for callable profiles")
        t, w = sp.roots_legendre(int(n))
        r = r_max * (t + 1) / 2
        w = w * r_max / 2
        vals = np.asarray(g(r), dtype=complex)
    else:
        r, w, vals = (np.asarray(a) for a in g)
    lam = np.asarray(lam)
    J = bessel_j_normalized(order, np.multiply.outer(lam, r))
    return J @ (vals * w * r ** (2 * order + 1))


def radial_profile(f, P: EvenPolynomial, sg: SphereGrid):
    """``r -> phi_l(r)``, the angular coefficient as a function of the radius."""
    return lambda r: angular_coefficient(f, P, r, sg)


def default_directions(p: AlphaParam, n_random=N_RANDOM_DIRECTIONS, seed=0):
    """``+-e_j`` for the first ``d`` axes, ``+e_{d+1}``, and random unit vectors."""
    dirs = []
    for j in range(p.d):
        e = np.zeros(p.ndim)
        e[j] = 1.0
        dirs += [e, -e]
    e = np.zeros(p.ndim)
    e[-1] = 1.0
    dirs.append(e)
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        v = rng.normal(size=p.ndim)
        dirs.append(v / np.linalg.norm(v))
    return dirs


def fit_type(s, log_g):
    """Coefficient of ``s`` in the least-squares fit of ``log_g`` on ``[s, sqrt s, log s, 1]``.

    Returns ``(slope, rms_residual, local_slopes)``.
    """
    s = np.asarray(s, dtype=float)
    log_g = np.asarray(log_g, dtype=float)
    if len(s) < 5:
        raise ValidationError("need at least 5 s-values to fit the exponential type")
    if np.any(np.diff(s) <= 0) or s[0] < 1:
        raise ValidationError("s-grid must be increasing with s_min >= 1")
    if not np.all(np.isfinite(log_g)):
        raise ValidationError("transform vanishes or overflows on the s-grid")
    A = np.stack([s, np.sqrt(s), np.log(s), np.ones_like(s)], axis=1)
    coef, *_ = np.linalg.lstsq(A, log_g, rcond=None)
    resid = float(np.sqrt(np.mean((A @ coef - log_g) ** 2)))
    return float(coef[0]), resid, np.diff(log_g) / np.diff(s)


def _check_range(f: SampledFunction, s_max):
    r_box = float(np.max(f.grid.radii()[np.abs(f.values) > 0], initial=0.0))
    if s_max * r_box > BESSEL_MAX_ARG:
        raise RangeError(
            f"s_max * radius = {s_max * r_box:.4g} leaves the working range {BESSEL_MAX_ARG}",
            suggestion=0.95 * BESSEL_MAX_ARG / r_box,
        )


def estimate_exponential_type(f: SampledFunction, directions=None, s_grid=None,
                              seed=0) -> TypeEstimate:
    """Estimate the exponential type of ``F f`` along ``y = i s u``."""
    if f.support_radius is None:
        raise PreconditionError("exponential type is only certified for compactly supported f")
    s = np.asarray(DEFAULT_S_GRID if s_grid is None else s_grid, dtype=float)
    _check_range(f, s[-1])
    if directions is None:
        directions = default_directions(f.param, seed=seed)
    rows = []
    for u in directions:
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        vals = forward_at_complex(f, 1j * s[:, None] * u[None, :])
        with np.errstate(divide="ignore"):
            slope, resid, local = fit_type(s, np.log(np.abs(vals)))
        rows.append({"direction": u, "slope": slope, "residual": resid, "local_slopes": local})
    R_hat = max(r["slope"] for r in rows)
    return TypeEstimate(R_hat, rows, (float(s[0]), float(s[-1])), lp_norm(f, 1))


def coefficient_type_estimate(f: SampledFunction, P: EvenPolynomial, sg: SphereGrid,
                              s_grid=None) -> float:
    """Exponential type of the spherical coefficient continued to ``lam = i s``."""
    if f.support_radius is None:
        raise PreconditionError("exponential type is only certified for compactly supported f")
    s = np.asarray(DEFAULT_S_GRID if s_grid is None else s_grid, dtype=float)
    _check_range(f, s[-1])
    phi = spherical_coefficient(transform_evaluator(f), P, 1j * s, sg)
    with np.errstate(divide="ignore"):
        slope, _, _ = fit_type(s, np.log(np.abs(phi)))
    return slope


def pw_bound_check(f: SampledFunction, points, radius=None, slack=1e-6):
    """Check ``|F f(y)| <= ||f||_{alpha,1} exp(R ||Im y||)`` at every test point."""
    R = f.support_radius if radius is None else float(radius)
    if R is None:
        raise PreconditionError("the Paley-Wiener bound needs a support radius")
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    _check_range(f, float(np.max(np.abs(pts)))) if len(pts) else None
    lhs = np.abs(forward_at_complex(f, pts))
    c = lp_norm(f, 1)
    rhs = c * np.exp(R * imag_norm(pts))
    ratio = lhs / rhs
    return {"c": c, "R": R, "max_ratio": float(np.max(ratio, initial=0.0)),
            "ok": bool(np.all(lhs <= rhs * (1 + slack)))}


def kernel_independence(points, xi, p: AlphaParam, normalize=True, allow_duplicates=False):
    """Smallest singular value of the matrix ``[Lambda(x_k, xi_m)]``.

    Columns are scaled to unit norm when ``normalize`` is set, so the value
    is comparable across point sets.
    """
    x = np.atleast_2d(np.asarray(points, dtype=float))
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    if x.shape[-1] != p.ndim or xi.shape[-1] != p.ndim:
        raise ValidationError(f"points must have {p.ndim} coordinates")
    if np.any(x[:, -1] < 0):
        raise ValidationError("points must lie in the closed upper half space")
    if len(xi) < len(x):
        raise ValidationError("need at least as many spectral samples as points")
    if not allow_duplicates and len(x) > 1:
        diff = np.linalg.norm(x[:, None, :] - x[None, :, :], axis=-1)
        diff[np.diag_indices(len(x))] = np.inf
        if np.min(diff) < 1e-12:
            raise ValidationError("points must be pairwise distinct")
    M = weinstein_kernel(p, xi[:, None, :], x[None, :, :])
    if normalize:
        M = M / np.linalg.norm(M, axis=0, keepdims=True)
    return float(np.linalg.svd(M, compute_uv=False)[-1])
