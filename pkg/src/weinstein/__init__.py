"""Numerical Weinstein analysis on the half-space ``R^d x (0, inf)``.

Quadrature-based forward/inverse Weinstein transforms, generalized
translation and convolution, the generalized heat semigroup, and a
Paley-Wiener analyzer that estimates exponential type from transform data.

>>> from weinstein import AlphaParam, build_box_grid, sample, forward
>>> from weinstein.functions import gaussian
>>> p = AlphaParam(0.5, d=1)
>>> f = sample(gaussian(1.0), build_box_grid(p, 7.0, (65, 64)))
>>> F = forward(f, build_box_grid(p, 14.0, (65, 64)))
"""
from .errors import (DomainError, NumericalQualityError, PreconditionError, RangeError,
                     ValidationError, WeinsteinError)
from .grids import (BoxGrid, SampledFunction, SphereGrid, build_box_grid, build_sphere_grid,
                    integrate, lp_norm, sample)
from .heat import HeatParams, heat_evolve, heat_function, heat_kernel, heat_peak
from .kernel import weinstein_kernel
from .paley_wiener import (TypeEstimate, estimate_exponential_type, kernel_independence,
                           pw_bound_check, spherical_coefficient)
from .polynomials import EvenPolynomial, is_generalized_harmonic, weinstein_laplacian
from .special import AlphaParam, bessel_j_normalized
from .transform import forward, forward_at_complex, forward_at_points, inverse
from .translation import convolve, translate, translation_norm_check

__version__ = "0.1.0"

__all__ = [
    "AlphaParam", "BoxGrid", "DomainError", "EvenPolynomial", "HeatParams",
    "NumericalQualityError", "PreconditionError", "RangeError", "SampledFunction",
    "SphereGrid", "TypeEstimate", "ValidationError", "WeinsteinError",
    "bessel_j_normalized", "build_box_grid", "build_sphere_grid", "convolve",
    "estimate_exponential_type", "forward", "forward_at_complex", "forward_at_points",
    "heat_evolve", "heat_function", "heat_kernel", "heat_peak", "integrate", "inverse",
    "is_generalized_harmonic", "kernel_independence", "lp_norm", "pw_bound_check",
    "sample", "spherical_coefficient", "translate", "translation_norm_check",
    "weinstein_kernel", "weinstein_laplacian",
]
