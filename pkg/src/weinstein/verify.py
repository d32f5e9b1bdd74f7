"""Named verification suites run by ``weinstein verify`` and the acceptance tests.

Every suite returns ``{"name", "ok", "details"}``; tolerances are pinned as
module constants.  The defaults cover the desk-scale configuration
(``d = 1``, grids of at most 256^2 nodes).
"""
from __future__ import annotations

import time
import warnings
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .functions import bump, gauss_poly_family
from .grids import build_box_grid, build_sphere_grid, integrate, lp_norm, sample
from .heat import heat_evolve, heat_function, heat_peak, HeatParams
from .kernel import weinstein_kernel
from .paley_wiener import (coefficient_type_estimate, estimate_exponential_type,
                           hankel_transform, kernel_independence, pw_bound_check,
                           radial_profile, spherical_coefficient, transform_evaluator)
from .polynomials import EvenPolynomial, is_generalized_harmonic
from .special import AlphaParam
from .transform import forward, inverse, parseval_defect, plancherel_defect
from .translation import (SpectralTruncationWarning, convolve, translate,
                          sup_norm, translate_angular, translation_modulus)

HEAT_SUP_TOL = 1e-7
HEAT_MASS_TOL = 1e-8
PLANCHEREL_TOL = 1e-6
INVERSION_TOL = 1e-6
TRANSLATION_TOL = 1e-6
CONTRACTION_SLACK = 1e-6
CONVOLUTION_TOL = 1e-6
YOUNG_SLACK = 1e-6
TYPE_WINDOW = (0.85, 1.05)
DILATION_TOL = 0.05
PW_SLACK = 1e-6
SUPPORT_TOL = 1e-8
TRANSLATED_TYPE_MAX = 2.1
MODULUS_SPREAD = 2.0
IDENTITY_FINAL = 1e-2
INDEPENDENCE_MIN = 1e-3
DUPLICATE_MAX = 1e-12
HANKEL_TOL = 1e-6

FAMILY_SIZE = 20
HEAT_TIMES = (1e-1, 2.5e-2, 6.25e-3, 1.5625e-3)


def family_grids(p: AlphaParam):
    """Spatial/spectral grids resolving ``P(x) exp(-a||x||^2)`` for ``a`` in [0.7, 1.5]."""
    return (build_box_grid(p, (7.0, 7.0), (129, 128)),
            build_box_grid(p, (14.0, 14.0), (129, 128)))


def _result(name, ok, **details):
    return {"name": name, "ok": bool(ok), "details": details}


def heat_kernel_suite(p: AlphaParam, t=0.25):
    grid = build_box_grid(p, 7.0, (97, 96))
    spec = build_box_grid(p, 14.0, (97, 96))
    E = sample(heat_function(p, t), grid)
    F = forward(E, spec)
    lam2 = sum(m * m for m in spec.mesh())
    sup_err = float(np.max(np.abs(F.values - np.exp(-t * lam2))))
    mass_err = abs(integrate(E) - 1)
    peak_err = abs(float(heat_function(p, t)(np.zeros(p.ndim))) - heat_peak(HeatParams(t, p)))
    return _result("heat-kernel", sup_err <= HEAT_SUP_TOL and mass_err <= HEAT_MASS_TOL,
                   sup_error=sup_err, mass_error=mass_err, peak_error=peak_err)


def plancherel_suite(p: AlphaParam, count=FAMILY_SIZE, seed=0):
    grid, spec = family_grids(p)
    fam = [sample(f, grid, label=lab) for f, lab in gauss_poly_family(p, count, seed)]
    pl = [plancherel_defect(f, spec) for f in fam]
    pv = [parseval_defect(f, g, spec) for f, g in zip(fam, fam[1:] + fam[:1])]
    worst = max(pl + pv)
    return _result("plancherel", worst <= PLANCHEREL_TOL, max_plancherel=max(pl),
                   max_parseval=max(pv), count=count)


def inversion_suite(p: AlphaParam, count=FAMILY_SIZE, seed=0):
    grid, spec = family_grids(p)
    errs = []
    for f, lab in gauss_poly_family(p, count, seed):
        fs = sample(f, grid, label=lab)
        back = inverse(forward(fs, spec), grid)
        errs.append(float(np.max(np.abs(back.values - fs.values)) / np.max(np.abs(fs.values))))
    return _result("inversion", max(errs) <= INVERSION_TOL, max_sup_relative=max(errs))


TRANSLATION_POINTS = ((0.0, 0.0), (1.0, 1.0), (-1.2, 1.6), (2.0, 0.0), (0.0, 2.0), (0.5, 0.3))


def translation_suite(p: AlphaParam, count=4, seed=1):
    grid, spec = family_grids(p)
    agree = []
    for f, lab in gauss_poly_family(p, count, seed):
        fs = sample(f, grid, label=lab)
        scale = np.max(np.abs(fs.values))
        for x in TRANSLATION_POINTS:
            a = translate(fs, x, grid, method="angular", nodes=32)
            s = translate(fs, x, grid, method="spectral", spectral=spec)
            agree.append(float(np.max(np.abs(a.values - s.values)) / scale))
    # |f| must be smooth for the L1 quadrature to reach the slack, hence squares
    big = build_box_grid(p, (9.0, 9.0), (129, 128))
    contraction = []
    for f, lab in gauss_poly_family(p, 2, seed, nonnegative=True):
        fs = sample(f, big, label=lab)
        for x in TRANSLATION_POINTS:
            t = translate(fs, x, big, nodes=32)
            contraction += [lp_norm(t, 1) / lp_norm(fs, 1) - 1,
                            lp_norm(t, 2) / lp_norm(fs, 2) - 1,
                            sup_norm(t) / sup_norm(fs) - 1]
    ok = max(agree) <= TRANSLATION_TOL and max(contraction) <= CONTRACTION_SLACK
    return _result("translation", ok, max_disagreement=max(agree),
                   max_norm_excess=max(contraction))


def convolution_suite(p: AlphaParam, pairs=2, seed=2):
    grid = build_box_grid(p, (6.0, 6.0), (65, 64))
    spec = build_box_grid(p, (12.0, 12.0), (65, 64))
    probe = build_box_grid(p, (3.0, 3.0), (12, 12))
    fam = [sample(f, grid, label=lab) for f, lab in gauss_poly_family(p, 2 * pairs, seed)]
    errs, young = [], []
    for f, g in zip(fam[::2], fam[1::2]):
        d = convolve(f, g, "direct", out=probe, nodes=32)
        s = convolve(f, g, "spectral", out=probe, spectral=spec)
        errs.append(float(np.max(np.abs(d.values - s.values)) / np.max(np.abs(s.values))))
        fg = convolve(f, g, "spectral", spectral=spec)
        for a, b, c in ((1, 1, 1), (1, 2, 2), (2, 2, np.inf)):
            young.append(lp_norm(fg, c) / (lp_norm(f, a) * lp_norm(g, b)) - 1)
    ok = max(errs) <= CONVOLUTION_TOL and max(young) <= YOUNG_SLACK
    return _result("convolution", ok, max_disagreement=max(errs), max_young_excess=max(young))


def bump_sample(p: AlphaParam, R=1.0, n=129):
    return sample(bump(R), build_box_grid(p, (R, R), (n, n - 1)), support_radius=R,
                  label=f"bump:R={R:g}", source=f"bump:R={R!r}")


def pw_type_suite(p: AlphaParam, n_points=200, seed=3):
    b1, b2 = bump_sample(p, 1.0), bump_sample(p, 2.0)
    r1 = estimate_exponential_type(b1).R_hat
    r2 = estimate_exponential_type(b2).R_hat
    rng = np.random.default_rng(seed)
    re = rng.uniform(-6, 6, size=(n_points, p.ndim))
    v = rng.normal(size=(n_points, p.ndim))
    im = v / np.linalg.norm(v, axis=1, keepdims=True) * rng.uniform(0, 8, size=(n_points, 1))
    bound = pw_bound_check(b1, re + 1j * im)
    ratio = r2 / r1
    ok = (TYPE_WINDOW[0] <= r1 <= TYPE_WINDOW[1] and abs(ratio - 2) <= 2 * DILATION_TOL
          and bound["ok"])
    return _result("pw-type", ok, R_hat=r1, R_hat_dilated=r2, dilation_ratio=ratio,
                   bound_max_ratio=bound["max_ratio"])


def support_growth_suite(p: AlphaParam, z=(0.6, 0.8)):
    b = bump_sample(p, 1.0)
    out = build_box_grid(p, (2.5, 2.5), (129, 128))
    vals = translate_angular(b, np.asarray(z), out.points(), nodes=128).reshape(out.shape)
    h = out.spacing()
    outside = out.radii() > 1.0 + np.linalg.norm(z) + 2 * h
    leak = float(np.max(np.abs(vals[outside])) / np.max(np.abs(vals)))
    tb = translate(b, z, build_box_grid(p, (2.0, 2.0), (129, 128)), nodes=128)
    r_hat = estimate_exponential_type(tb).R_hat
    return _result("support-growth", leak <= SUPPORT_TOL and r_hat <= TRANSLATED_TYPE_MAX,
                   outside_relative_max=leak, R_hat=r_hat, spacing=h)


def modulus_suite(p: AlphaParam):
    b = sample(bump(1.0), build_box_grid(p, (1.5, 1.5), (129, 128)), support_radius=1.0)
    u = np.array([1.0, 1.0]) / np.sqrt(2.0)
    sizes = [2.0 ** -k for k in range(1, 7)]
    ratios = [translation_modulus(b, r * u, 1) / r for r in sizes]
    spread = max(ratios) / min(ratios)
    return _result("modulus", spread < MODULUS_SPREAD, ratios=ratios, spread=spread)


def approx_identity_suite(p: AlphaParam, R=4.0):
    f_in = sample(bump(R), build_box_grid(p, (R, R), (129, 128)), support_radius=R)
    out = build_box_grid(p, (R + 2.0, R + 2.0), (129, 128))
    f_out = sample(bump(R), out)
    spec = build_box_grid(p, (40.0, 40.0), (193, 192))
    norm = lp_norm(f_out, 1)
    errs, l1 = [], []
    for t in HEAT_TIMES:
        h = heat_evolve(f_in, t, spectral=spec, out=out)
        errs.append(lp_norm(f_out.with_values(h.values - f_out.values), 1) / norm)
        l1.append(lp_norm(h, 1) / norm)
    decreasing = all(a > b for a, b in zip(errs, errs[1:]))
    root = [e / np.sqrt(t) for e, t in zip(errs, HEAT_TIMES)]
    ok = decreasing and errs[-1] <= IDENTITY_FINAL and max(root) <= 2 * root[0]
    return _result("heat-approx-identity", ok, t=list(HEAT_TIMES), relative_error=errs,
                   error_over_sqrt_t=root, l1_ratio=l1)


def independence_suite(p: AlphaParam, n_points=5, n_xi=200, seed=4):
    rng = np.random.default_rng(seed)
    pts = np.column_stack([rng.uniform(-2, 2, (n_points, p.d)), rng.uniform(0.1, 2, n_points)])
    xi = np.column_stack([rng.uniform(-5, 5, (n_xi, p.d)), rng.uniform(0, 5, n_xi)])
    smin = kernel_independence(pts, xi, p)
    dup = kernel_independence(np.vstack([pts, pts[:1]]), xi, p, allow_duplicates=True)
    return _result("independence", smin > INDEPENDENCE_MIN and dup < DUPLICATE_MAX,
                   sigma_min=smin, sigma_min_duplicated=dup)


def harmonics_suite(p: AlphaParam):
    a = Fraction(p.alpha).limit_denominator(10 ** 6)
    n = p.ndim
    e1 = tuple(2 if j == 0 else 0 for j in range(n))
    en = tuple(2 if j == n - 1 else 0 for j in range(n))
    H = EvenPolynomial({e1: 2 * a + 2, en: -1}, n)
    sq = EvenPolynomial({tuple(2 if j == k else 0 for j in range(n)): 1 for k in range(n)}, n)
    acc, rej = is_generalized_harmonic(H, a), not is_generalized_harmonic(sq, a)
    return _result("harmonics", acc and rej, accepts_harmonic=acc, rejects_norm_squared=rej)


def hankel_reduction_suite(p: AlphaParam, seed=5):
    grid, _ = family_grids(p)
    f, lab = gauss_poly_family(p, 1, seed)[0]
    fs = sample(f, grid, label=lab)
    sg = build_sphere_grid(p, 64)
    one = EvenPolynomial({(0,) * p.ndim: 1}, p.ndim)
    lam = np.linspace(0.25, 8.0, 32)
    phi = spherical_coefficient(transform_evaluator(fs), one, lam, sg)
    H = hankel_transform(p.alpha + p.d / 2, radial_profile(fs, one, sg), lam, r_max=9.0, n=256)
    c = np.vdot(H, phi) / np.vdot(H, H)
    resid = float(np.linalg.norm(phi - c * H) / np.linalg.norm(phi))
    b = bump_sample(p, 1.0)
    coef_type = coefficient_type_estimate(b, one, sg)
    return _result("hankel-reduction", resid <= HANKEL_TOL, residual=resid,
                   fitted_scalar=[float(c.real), float(c.imag)], coefficient_type=coef_type)


SUITES = {
    "heat-kernel": heat_kernel_suite,
    "plancherel": plancherel_suite,
    "inversion": inversion_suite,
    "translation": translation_suite,
    "convolution": convolution_suite,
    "pw-type": pw_type_suite,
    "support-growth": support_growth_suite,
    "modulus": modulus_suite,
    "heat-approx-identity": approx_identity_suite,
    "independence": independence_suite,
    "harmonics": harmonics_suite,
    "hankel-reduction": hankel_reduction_suite,
}


def run_suite(name: str, p: AlphaParam):
    if name not in SUITES:
        raise ValidationError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    if p.d != 1 and name in ("hankel-reduction",):
        raise ValidationError(f"suite {name!r} is only available for d=1")
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SpectralTruncationWarning)
        res = SUITES[name](p)
    res["seconds"] = round(time.perf_counter() - t0, 3)
    res["alpha"], res["d"] = p.alpha, p.d
    return res


def run(names, p: AlphaParam):
    names = list(SUITES) if names in ("all", ["all"]) else ([names] if isinstance(names, str) else names)
    return [run_suite(n, p) for n in names]
