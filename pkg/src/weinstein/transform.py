"""Forward and inverse Weinstein transforms by quadrature.

Two evaluation paths are provided.  ``"direct"`` forms the full kernel
matrix between input nodes and output points; ``"separable"`` uses the
product structure of the kernel and applies one 1-D matrix per axis.  They
must agree to rounding, which the test suite checks.
"""
from __future__ import annotations

import numpy as np

from .errors import PreconditionError, ValidationError
from .grids import BoxGrid, SampledFunction, build_box_grid, lp_norm
from .kernel import weinstein_kernel
from .special import bessel_j_normalized, inversion_constant

_CHUNK = 2_000_000


def default_spectral_grid(grid: BoxGrid, counts=None, rule=None) -> BoxGrid:
    """Dual grid with ``X_spec = n / (2 X_spat)`` per axis."""
    counts = counts or grid.shape
    ext = [n / (2.0 * X) for n, X in zip(grid.shape, grid.extents)]
    return build_box_grid(grid.param, ext, counts, rule or grid.rules)


def _check_params(a: BoxGrid, b: BoxGrid):
    if a.param != b.param:
        raise ValidationError(f"parameter mismatch: {a.param} vs {b.param}")


def _axis_matrices(p, in_nodes, out_nodes, sign):
    mats = []
    for j, (xi, lo) in enumerate(zip(in_nodes, out_nodes)):
        if j < p.d:
            mats.append(np.exp(-1j * sign * np.outer(lo, xi)))
        else:
            mats.append(bessel_j_normalized(p.alpha, np.outer(lo, xi)))
    return mats


def _apply_separable(u, mats):
    for j, m in enumerate(mats):
        u = np.moveaxis(np.tensordot(m, u, axes=([1], [j])), 0, j)
    return u


def _sum_at_points(f: SampledFunction, pts, sign=1):
    """``sum_x f(x) Lambda(sign*lam, x) w(x)`` for each row ``lam`` of ``pts``."""
    fw = (f.values * f.grid.weight_array()).ravel()
    x = f.grid.points()
    if sign < 0:
        pts = np.array(pts, dtype=complex, copy=True)
        pts[:, :-1] = -pts[:, :-1]
    out = np.empty(len(pts), dtype=complex)
    step = max(1, _CHUNK // max(1, len(x)))
    for i in range(0, len(pts), step):
        k = weinstein_kernel(f.param, pts[i:i + step, None, :], x[None, :, :])
        out[i:i + step] = k @ fw
    return out


def _sum_at_points_factored(f: SampledFunction, pts, sign=1):
    """Same sums as ``_sum_at_points``, contracting one grid axis at a time.

    Needs one Bessel value per (point, last-axis node) instead of one per
    (point, grid node).
    """
    pts = np.asarray(pts)
    d = f.param.d
    u = f.values * f.grid.weight_array()
    out = np.empty(len(pts), dtype=complex)
    step = max(1, _CHUNK // max(1, f.grid.size))
    for i in range(0, len(pts), step):
        q = pts[i:i + step]
        t = np.tensordot(u, bessel_j_normalized(f.param.alpha, np.outer(q[:, -1], f.grid.nodes[-1])),
                         axes=([d], [1]))
        for j in range(d):
            e = np.exp(-1j * sign * np.outer(q[:, j], f.grid.nodes[j]))
            t = np.einsum("a...p,pa->...p", t, e)
        out[i:i + step] = t
    return out


def forward(f: SampledFunction, out: BoxGrid, mode="separable") -> SampledFunction:
    """Weinstein transform of ``f`` sampled on the spectral grid ``out``."""
    _check_params(f.grid, out)
    if mode == "separable":
        u = f.values * f.grid.weight_array()
        vals = _apply_separable(u, _axis_matrices(f.param, f.grid.nodes, out.nodes, 1))
    elif mode == "direct":
        vals = _sum_at_points(f, out.points()).reshape(out.shape)
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    return SampledFunction(out, vals, label=f"F[{f.label}]")


def forward_at_points(f: SampledFunction, pts) -> np.ndarray:
    """Transform at an explicit ``(M, d+1)`` list of real or complex points."""
    pts = np.atleast_2d(np.asarray(pts))
    if pts.shape[-1] != f.param.ndim:
        raise ValidationError(f"points must have {f.param.ndim} coordinates")
    return _sum_at_points_factored(f, pts)


def forward_at_complex(f: SampledFunction, pts) -> np.ndarray:
    """Entire extension of the transform of a compactly supported ``f``."""
    if f.support_radius is None:
        raise PreconditionError(
            "complex extension requires a declared support_radius on the input"
        )
    return forward_at_points(f, np.asarray(pts, dtype=complex))


def inverse(g: SampledFunction, out: BoxGrid | None = None, mode="separable") -> SampledFunction:
    """``C_{alpha,d} * sum_lam g(lam) Lambda(-y, lam) w(lam)`` on the grid ``out``."""
    if out is None:
        out = default_spectral_grid(g.grid)
    _check_params(g.grid, out)
    c = inversion_constant(g.param)
    if mode == "separable":
        u = g.values * g.grid.weight_array()
        vals = c * _apply_separable(u, _axis_matrices(g.param, g.grid.nodes, out.nodes, -1))
    elif mode == "direct":
        vals = c * _sum_at_points(g, out.points().astype(complex), sign=-1).reshape(out.shape)
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    return SampledFunction(out, vals, label=f"Finv[{g.label}]")


def inverse_at_points(g: SampledFunction, pts) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(pts, dtype=complex))
    return inversion_constant(g.param) * _sum_at_points_factored(g, pts, sign=-1)


def plancherel_defect(f: SampledFunction, spectral: BoxGrid | None = None) -> float:
    """Relative gap between ``||f||_2^2`` and ``C ||F f||_2^2``."""
    lhs = lp_norm(f, 2) ** 2
    if lhs == 0:
        raise ValidationError("Plancherel defect is undefined for the zero function")
    spectral = spectral or default_spectral_grid(f.grid)
    rhs = inversion_constant(f.param) * lp_norm(forward(f, spectral), 2) ** 2
    return abs(lhs - rhs) / lhs


def parseval_defect(f: SampledFunction, g: SampledFunction,
                    spectral: BoxGrid | None = None) -> float:
    """``|<f,g> - C <Ff,Fg>| / (||f||_2 ||g||_2)``."""
    _check_params(f.grid, g.grid)
    nf, ng = lp_norm(f, 2), lp_norm(g, 2)
    if nf == 0 or ng == 0:
        raise ValidationError("Parseval defect is undefined for a zero function")
    lhs = np.sum(f.values * np.conj(g.values) * f.grid.weight_array()) if f.grid is g.grid \
        else _inner_on(f, g)
    spectral = spectral or default_spectral_grid(f.grid)
    Ff, Fg = forward(f, spectral), forward(g, spectral)
    rhs = inversion_constant(f.param) * np.sum(Ff.values * np.conj(Fg.values)
                                               * spectral.weight_array())
    return float(abs(lhs - rhs) / (nf * ng))


def _inner_on(f, g):
    if not f.grid.same_as(g.grid):
        raise ValidationError("Parseval needs both functions on the same grid")
    return np.sum(f.values * np.conj(g.values) * f.grid.weight_array())
