"""Closed-form test functions and the ``name:key=value`` spec syntax used by the CLI.

Recognized specs::

    gaussian:a=1            exp(-a ||x||^2)
    bump:R=1                exp(-1 / (1 - ||x||^2 / R^2)) inside the ball of radius R
    heat:t=0.25             the heat kernel E_t
    poly-gauss:a=1;poly=[{"nu": [2, 0], "coeff": "3"}, ...]
"""
from __future__ import annotations

import json

import numpy as np

from .errors import ValidationError
from .grids import BoxGrid, SampledFunction, sample
from .heat import heat_function
from .polynomials import EvenPolynomial, evaluate
from .special import AlphaParam


def gaussian(a):
    a = float(a)
    if not a > 0:
        raise ValidationError("gaussian width parameter a must be positive")
    return lambda x: np.exp(-a * np.sum(np.asarray(x, dtype=float) ** 2, axis=-1))


def bump(R=1.0):
    R = float(R)
    if not R > 0:
        raise ValidationError("bump radius must be positive")

    def f(x):
        s = np.sum(np.asarray(x, dtype=float) ** 2, axis=-1) / (R * R)
        inside = s < 1
        out = np.zeros(s.shape)
        out[inside] = np.exp(-1.0 / (1.0 - s[inside]))
        return out

    return f


def poly_gauss(P: EvenPolynomial, a):
    g = gaussian(a)
    return lambda x: evaluate(P, np.asarray(x, dtype=float)) * g(x)


def parse_spec(spec: str, p: AlphaParam):
    """Return ``(callable, support_radius, label)`` for a function spec string."""
    name, _, rest = spec.partition(":")
    params, poly = {}, None
    if "poly=" in rest:
        rest, _, poly_txt = rest.partition("poly=")
        try:
            poly = EvenPolynomial.from_json(json.loads(poly_txt), nvars=p.ndim)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValidationError(f"bad inline polynomial: {exc}") from exc
    for item in filter(None, (s.strip() for s in rest.replace(";", ",").split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValidationError(f"expected key=value in function spec, got {item!r}")
        try:
            params[key.strip()] = float(val)
        except ValueError as exc:
            raise ValidationError(f"non-numeric value in function spec: {item!r}") from exc
    try:
        if name == "gaussian":
            return gaussian(params.get("a", 1.0)), None, spec
        if name == "bump":
            R = params.get("R", 1.0)
            return bump(R), R, spec
        if name == "heat":
            return heat_function(p, params.get("t", 0.25)), None, spec
        if name == "poly-gauss":
            if poly is None:
                raise ValidationError("poly-gauss needs an inline poly=[...] list")
            return poly_gauss(poly, params.get("a", 1.0)), None, spec
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    raise ValidationError(f"unknown function spec {name!r}")


def sample_spec(spec: str, grid: BoxGrid) -> SampledFunction:
    f, R, label = parse_spec(spec, grid.param)
    return sample(f, grid, support_radius=R, label=label, source=spec)


def random_even_polynomial(rng, nvars=2, max_degree=4):
    """Random non-homogeneous polynomial in ``x_1..x_d`` and ``x_{d+1}^2``."""
    coeffs = {}
    for nu in _even_multi_indices(nvars, max_degree):
        coeffs[nu] = float(rng.uniform(-1, 1))
    coeffs[(0,) * nvars] = 1.0 + abs(coeffs.get((0,) * nvars, 0.0))
    return EvenPolynomial(coeffs, nvars)


def _even_multi_indices(nvars, max_degree):
    if nvars == 1:
        return [(k,) for k in range(0, max_degree + 1, 2)]
    out = []
    for k in range(max_degree + 1):
        out += [(k,) + rest for rest in _even_multi_indices(nvars - 1, max_degree - k)]
    return out


def gauss_poly_family(p: AlphaParam, count=20, seed=0, a_range=(0.7, 1.5), max_degree=4,
                      nonnegative=False):
    """``count`` random functions ``P(x) exp(-a ||x||^2)`` with their labels.

    With ``nonnegative=True`` the polynomial is squared (degree up to
    ``2 * max_degree``), which keeps ``|f|`` smooth for L1 quadrature.
    """
    rng = np.random.default_rng(seed)
    fam = []
    for k in range(count):
        P = random_even_polynomial(rng, p.ndim, max_degree)
        a = float(rng.uniform(*a_range))
        if nonnegative:
            P = P * P
        fam.append((poly_gauss(P, a), f"poly-gauss#{k}:a={a:.3f}"))
    return fam
