"""Tensor quadrature for the measure ``x_{d+1}^{2 alpha+1} dx`` on truncated boxes.

The first ``d`` axes live on ``[-X_j, X_j]``; the last on ``(0, X_{d+1}]``
and its weights already carry the factor ``x_{d+1}^{2 alpha+1}``.  Values of
sampled functions are stored with shape ``grid.shape`` and flattened in
row-major (C) order for serialization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special as sp
from scipy.interpolate import RegularGridInterpolator

from .errors import DomainError, ValidationError
from .special import AlphaParam

RULES = ("gauss-legendre", "trapezoid")
MIN_COUNT = 8
SUPPORT_TOL = 1e-14


def _axis_rule(rule, n, lo, hi, avoid_lo=False):
    if rule == "gauss-legendre":
        t, w = sp.roots_legendre(n)
        half = (hi - lo) / 2
        return lo + half * (t + 1), half * w
    if rule == "trapezoid":
        if avoid_lo:
            # first node at dx so the singular weight is never sampled at 0
            h = (hi - lo) / n
            x = lo + h * np.arange(1, n + 1)
            w = np.full(n, h)
            w[-1] = h / 2
            return x, w
        x = np.linspace(lo, hi, n)
        h = x[1] - x[0]
        w = np.full(n, h)
        w[0] = w[-1] = h / 2
        return x, w
    raise ValidationError(f"unknown quadrature rule {rule!r}; expected one of {RULES}")


@dataclass(frozen=True, eq=False)
class BoxGrid:
    param: AlphaParam
    nodes: tuple
    weights: tuple
    extents: tuple
    rules: tuple

    def __post_init__(self):
        nd = self.param.ndim
        if not (len(self.nodes) == len(self.weights) == len(self.extents) == len(self.rules) == nd):
            raise ValidationError(f"expected {nd} axes")
        for x, w in zip(self.nodes, self.weights):
            if x.shape != w.shape or x.ndim != 1:
                raise ValidationError("node/weight arrays must be 1-D and of equal length")
            if np.any(np.diff(x) <= 0):
                raise ValidationError("nodes must be strictly increasing")
            if np.any(w < 0):
                raise ValidationError("weights must be nonnegative")
            x.setflags(write=False)
            w.setflags(write=False)
        if self.nodes[-1][0] <= 0:
            raise ValidationError("last-axis nodes must be strictly positive")

    @property
    def shape(self):
        return tuple(len(x) for x in self.nodes)

    @property
    def size(self):
        return int(np.prod(self.shape))

    def mesh(self):
        return np.meshgrid(*self.nodes, indexing="ij")

    def points(self):
        """Nodes as an ``(size, d+1)`` array in row-major order."""
        return np.stack([m.ravel() for m in self.mesh()], axis=-1)

    def weight_array(self):
        w = self.weights[0]
        for wj in self.weights[1:]:
            w = np.multiply.outer(w, wj)
        return w

    def radii(self):
        return np.sqrt(sum(m * m for m in self.mesh()))

    def spacing(self):
        """Largest gap between neighbouring nodes over all axes."""
        return max(float(np.max(np.diff(x))) for x in self.nodes)

    def same_as(self, other) -> bool:
        return (
            self.param == other.param
            and all(np.array_equal(a, b) for a, b in zip(self.nodes, other.nodes))
            and all(np.array_equal(a, b) for a, b in zip(self.weights, other.weights))
        )


def build_box_grid(p: AlphaParam, extents, counts, rule="gauss-legendre") -> BoxGrid:
    """Tensor grid on ``prod [-X_j, X_j] x (0, X_{d+1}]``.

    ``extents``/``counts``/``rule`` may be scalars (broadcast over all axes)
    or per-axis sequences.
    """
    nd = p.ndim
    extents = _broadcast(extents, nd, float)
    counts = _broadcast(counts, nd, int)
    rules = _broadcast(rule, nd, str)
    if any(not X > 0 for X in extents):
        raise ValidationError(f"extents must be positive, got {extents}")
    if any(n < MIN_COUNT for n in counts):
        raise ValidationError(f"counts must be >= {MIN_COUNT}, got {counts}")
    nodes, weights = [], []
    for j in range(nd):
        if j < p.d:
            x, w = _axis_rule(rules[j], counts[j], -extents[j], extents[j])
        else:
            x, w = _axis_rule(rules[j], counts[j], 0.0, extents[j], avoid_lo=True)
            w = w * x ** p.weight_exponent
        nodes.append(x)
        weights.append(w)
    return BoxGrid(p, tuple(nodes), tuple(weights), tuple(extents), tuple(rules))


def _broadcast(v, n, cast):
    if isinstance(v, (str, int, float, np.integer, np.floating)):
        return tuple(cast(v) for _ in range(n))
    v = tuple(cast(x) for x in v)
    if len(v) != n:
        raise ValidationError(f"expected {n} per-axis entries, got {len(v)}")
    return v


@dataclass(eq=False)
class SampledFunction:
    """Complex samples on a :class:`BoxGrid`.

    ``func``, when present, is the exact callable the samples came from
    (points of shape ``(..., d+1)`` to values); off-grid evaluation prefers
    it over interpolation.  It is not serialized, but ``source`` (a
    built-in function spec such as ``"bump:R=1"``) is.
    """

    grid: BoxGrid
    values: np.ndarray
    support_radius: Optional[float] = None
    label: str = ""
    func: Optional[Callable] = field(default=None, repr=False)
    source: Optional[str] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.size != self.grid.size:
            raise ValidationError(
                f"values length {v.size} does not match grid size {self.grid.size}"
            )
        v = v.reshape(self.grid.shape).copy()
        if self.support_radius is not None:
            R = float(self.support_radius)
            if R < 0:
                raise ValidationError("support_radius must be nonnegative")
            outside = self.grid.radii() > R
            peak = np.max(np.abs(v)) if v.size else 0.0
            if np.any(np.abs(v[outside]) > SUPPORT_TOL * peak):
                raise ValidationError(
                    f"values do not vanish outside the declared support radius {R}"
                )
            v[outside] = 0.0
            self.support_radius = R
        self.values = v
        self._interp = None

    @property
    def param(self) -> AlphaParam:
        return self.grid.param

    def with_values(self, values, label=None, support_radius=None):
        return SampledFunction(self.grid, values, support_radius,
                               label if label is not None else self.label)

    def evaluate(self, pts):
        """Values at arbitrary points ``(..., d+1)``, even in the last coordinate."""
        pts = np.asarray(pts, dtype=float)
        if self.func is not None:
            return np.asarray(self.func(pts), dtype=complex)
        return self._interpolate(pts)

    def _interpolate(self, pts):
        shape = pts.shape[:-1]
        flat = pts.reshape(-1, pts.shape[-1]).copy()
        flat[:, -1] = np.abs(flat[:, -1])
        out = np.zeros(len(flat), dtype=complex)
        live = np.ones(len(flat), dtype=bool)
        if self.support_radius is not None:
            live = np.linalg.norm(flat, axis=1) <= self.support_radius
        lo = np.array([x[0] for x in self.grid.nodes[:-1]] + [-self.grid.nodes[-1][-1]])
        hi = np.array([x[-1] for x in self.grid.nodes])
        inside = np.all((flat >= lo - 1e-12) & (flat <= hi + 1e-12), axis=1)
        if np.any(live & ~inside):
            raise ValidationError("evaluation point lies outside the sampled box")
        if np.any(live):
            if self._interp is None:
                self._interp = self._build_interpolator()
            q = np.clip(flat[live], lo, hi)
            re, im = self._interp
            out[live] = re(q) + 1j * im(q)
        return out.reshape(shape)

    def _build_interpolator(self):
        # mirror the last axis so cubic splines see the even extension
        x_last = self.grid.nodes[-1]
        axes = list(self.grid.nodes[:-1]) + [np.concatenate([-x_last[::-1], x_last])]
        v = np.concatenate([self.values[..., ::-1], self.values], axis=-1)
        kw = dict(method="cubic", bounds_error=False, fill_value=None)
        return (RegularGridInterpolator(axes, v.real, **kw),
                RegularGridInterpolator(axes, v.imag, **kw))


def sample(func: Callable, grid: BoxGrid, support_radius=None, label="", source=None):
    """Sample ``func`` (points ``(..., d+1)`` -> values) on every node of ``grid``."""
    vals = np.asarray(func(grid.points()), dtype=complex)
    if support_radius is not None:
        vals = np.where(grid.radii().ravel() > support_radius, 0.0, vals)
    return SampledFunction(grid, vals, support_radius, label, func=func, source=source)


def integrate(f: SampledFunction) -> complex:
    """Quadrature of ``int f d mu_alpha`` over the truncated box."""
    return complex(np.sum(f.values * f.grid.weight_array()))


def lp_norm(f: SampledFunction, p) -> float:
    """Weighted ``L^p`` norm; ``p = inf`` gives the max over the nodes."""
    p = float(p)
    if not p >= 1:
        raise DomainError(f"p must lie in [1, inf], got {p}")
    a = np.abs(f.values)
    if np.isinf(p):
        return float(np.max(a)) if a.size else 0.0
    return float(np.sum(a ** p * f.grid.weight_array()) ** (1.0 / p))


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Quadrature on the upper half sphere for ``t_{d+1}^{2 alpha+1} d sigma``."""

    param: AlphaParam
    directions: np.ndarray
    weights: np.ndarray

    @property
    def total(self) -> float:
        return float(np.sum(self.weights))


def build_sphere_grid(p: AlphaParam, resolution: int = 64) -> SphereGrid:
    """Gauss-Jacobi rule on the half circle ``t = (cos phi, sin phi)``.

    With ``u = cos phi`` the weight ``sin^{2 alpha+1} phi d phi`` becomes
    ``(1-u^2)^alpha du``, which the rule integrates exactly.
    """
    if p.d != 1:
        raise ValidationError(f"half-sphere grids are only available for d=1, got d={p.d}")
    if resolution < 16:
        raise ValidationError(f"resolution must be >= 16, got {resolution}")
    u, w = sp.roots_jacobi(int(resolution), p.alpha, p.alpha)
    t = np.stack([u, np.sqrt(1.0 - u * u)], axis=-1)
    return SphereGrid(p, t, w)
