"""Heat kernel of the Weinstein operator and the heat semigroup."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .grids import BoxGrid, SampledFunction, sample
from .special import AlphaParam, log_gamma
from .transform import default_spectral_grid, forward, inverse
from .translation import DEFAULT_NODES, convolve


@dataclass(frozen=True)
class HeatParams:
    t: float
    param: AlphaParam

    def __post_init__(self):
        if not self.t > 0:
            raise DomainError(f"diffusion time must be positive, got {self.t}")


def heat_peak(h: HeatParams) -> float:
    """``E_t(0) = 2 / (pi^{d/2} Gamma(alpha+1) (4t)^{alpha+1+d/2})``."""
    a, d = h.param.alpha, h.param.d
    return math.exp(math.log(2) - (d / 2) * math.log(math.pi) - log_gamma(a + 1)
                    - (a + 1 + d / 2) * math.log(4 * h.t))


def heat_kernel(h: HeatParams, x):
    """``E_t(x) = E_t(0) exp(-||x||^2 / 4t)`` at points ``(..., d+1)``."""
    x = np.asarray(x, dtype=float)
    return heat_peak(h) * np.exp(-np.sum(x * x, axis=-1) / (4 * h.t))


def heat_function(p: AlphaParam, t):
    h = HeatParams(float(t), p)
    return lambda x: heat_kernel(h, x)


def sample_heat(p: AlphaParam, t, grid: BoxGrid) -> SampledFunction:
    return sample(heat_function(p, t), grid, label=f"E_{t:g}", source=f"heat:t={t!r}")


def heat_evolve(f: SampledFunction, t, method="spectral", spectral: BoxGrid | None = None,
                out: BoxGrid | None = None, nodes=DEFAULT_NODES) -> SampledFunction:
    """``f *_W E_t``; spectrally ``F^{-1}[Ff exp(-t ||lam||^2)]``."""
    h = HeatParams(float(t), f.param)
    out = out or f.grid
    if method == "spectral":
        spectral = spectral or default_spectral_grid(f.grid)
        Ff = forward(f, spectral)
        lam2 = sum(m * m for m in spectral.mesh())
        res = inverse(Ff.with_values(Ff.values * np.exp(-h.t * lam2)), out)
    elif method == "direct":
        res = convolve(f, sample_heat(f.param, h.t, f.grid), "direct", out=out, nodes=nodes)
    else:
        raise ValidationError(f"unknown method {method!r}")
    res.label = f"heat[{f.label}, t={h.t:g}]"
    return res


def heat_equation_residual(h: HeatParams, x, dt=1e-3, dx=1e-3) -> float:
    """``|d_t E - (Delta_d + L_alpha) E|`` at ``(t, x)`` by central differences."""
    x = np.asarray(x, dtype=float)
    p = h.param
    if x.shape != (p.ndim,):
        raise ValidationError(f"x must have {p.ndim} coordinates")
    if x[-1] < 4 * dx:
        raise ValidationError("stencil reaches the boundary x_{d+1} = 0; move x inward")
    if h.t - dt <= 0:
        raise ValidationError("time step reaches t <= 0")
    E = lambda t, y: heat_kernel(HeatParams(t, p), y)  # noqa: E731
    dEdt = (E(h.t + dt, x) - E(h.t - dt, x)) / (2 * dt)
    e0 = E(h.t, x)
    lap = 0.0
    for j in range(p.ndim):
        step = np.zeros(p.ndim)
        step[j] = dx
        ep, em = E(h.t, x + step), E(h.t, x - step)
        lap += (ep - 2 * e0 + em) / dx ** 2
        if j == p.ndim - 1:
            lap += p.weight_exponent / x[-1] * (ep - em) / (2 * dx)
    return float(abs(dEdt - lap))
