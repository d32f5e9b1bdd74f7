from math import gamma, pi

import numpy as np
import pytest

from weinstein.errors import DomainError, ValidationError
from weinstein.functions import bump
from weinstein.grids import SampledFunction, build_box_grid, integrate, lp_norm, sample
from weinstein.heat import (HeatParams, heat_equation_residual, heat_evolve, heat_function,
                            heat_kernel, heat_peak)
from weinstein.special import AlphaParam


def test_peak_formula(param):
    t = 0.37
    want = 2 / (pi ** 0.5 * gamma(param.alpha + 1) * (4 * t) ** (param.alpha + 1.5))
    h = HeatParams(t, param)
    assert heat_peak(h) == pytest.approx(want, rel=1e-14)
    assert heat_kernel(h, np.zeros(2)) == pytest.approx(want, rel=1e-14)


def test_kernel_positive_and_gaussian(param):
    h = HeatParams(0.2, param)
    x = np.array([[0.3, 0.1], [2.0, 3.0]])
    v = heat_kernel(h, x)
    assert np.all(v > 0)
    assert v[1] / v[0] == pytest.approx(np.exp(-(13.0 - 0.1) / 0.8), rel=1e-12)


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_rejects_nonpositive_time(t):
    with pytest.raises(DomainError):
        HeatParams(t, AlphaParam(0.5, 1))


def test_unit_mass(param):
    g = build_box_grid(param, 6.0, (97, 96))
    assert integrate(sample(heat_function(param, 0.25), g)) == pytest.approx(1, abs=1e-8)


@pytest.fixture(scope="module")
def grids():
    p = AlphaParam(0.5, 1)
    return p, build_box_grid(p, 7.0, (129, 128)), build_box_grid(p, 14.0, (129, 128))


class TestEvolve:
    def test_semigroup(self, grids):
        p, g, s = grids
        out = heat_evolve(sample(heat_function(p, 0.3), g), 0.4, spectral=s)
        want = heat_function(p, 0.7)(g.points()).reshape(g.shape)
        assert np.max(np.abs(out.values - want)) <= 1e-6

    def test_direct_matches_spectral(self, grids):
        p, g, s = grids
        f = sample(heat_function(p, 0.3), g)
        probe = build_box_grid(p, 2.0, (8, 8))
        a = heat_evolve(f, 0.2, method="direct", out=probe, nodes=32)
        b = heat_evolve(f, 0.2, spectral=s, out=probe)
        assert np.max(np.abs(a.values - b.values)) <= 1e-6 * np.max(np.abs(b.values))

    def test_zero(self, grids):
        p, g, s = grids
        z = heat_evolve(SampledFunction(g, np.zeros(g.size)), 0.1, spectral=s)
        assert not np.any(z.values)

    def test_mass_and_contraction(self, grids):
        p, g, s = grids
        f = sample(lambda x: (1 - x[..., 0]) * np.exp(-np.sum(x ** 2, -1)), g)
        h = heat_evolve(f, 0.1, spectral=s)
        assert integrate(h) == pytest.approx(integrate(f), abs=1e-8)
        assert lp_norm(h, 1) <= lp_norm(f, 1) * (1 + 1e-6)

    def test_monotone_approach(self):
        p = AlphaParam(0.5, 1)
        f = sample(bump(4.0), build_box_grid(p, 4.0, (129, 128)), support_radius=4.0)
        out = build_box_grid(p, 6.0, (129, 128))
        ref = sample(bump(4.0), out)
        spec = build_box_grid(p, 40.0, (193, 192))
        errs = [lp_norm(ref.with_values(heat_evolve(f, t, spectral=spec, out=out).values
                                        - ref.values), 1) for t in (0.1, 0.05, 0.025)]
        assert errs[0] > errs[1] > errs[2]

    def test_validation(self, grids):
        p, g, s = grids
        f = sample(heat_function(p, 0.3), g)
        with pytest.raises(DomainError):
            heat_evolve(f, 0.0)
        with pytest.raises(ValidationError):
            heat_evolve(f, 0.1, method="euler")


class TestResidual:
    def test_small_at_interior_point(self):
        h = HeatParams(0.5, AlphaParam(0.5, 1))
        x = np.array([0.3, 0.7])
        r = heat_equation_residual(h, x, 1e-3, 1e-3)
        e = 1e-4
        dEdt = (heat_kernel(HeatParams(0.5 + e, h.param), x)
                - heat_kernel(HeatParams(0.5 - e, h.param), x)) / (2 * e)
        assert r <= 1e-4 * abs(dEdt)

    def test_second_order(self):
        h = HeatParams(0.5, AlphaParam(0.5, 1))
        x = np.array([0.3, 0.7])
        r1 = heat_equation_residual(h, x, 1e-2, 1e-2)
        r2 = heat_equation_residual(h, x, 5e-3, 5e-3)
        assert r2 / r1 == pytest.approx(0.25, abs=0.03)

    def test_reflection_invariant(self):
        h = HeatParams(0.5, AlphaParam(1.5, 1))
        a = heat_equation_residual(h, np.array([0.3, 0.7]))
        b = heat_equation_residual(h, np.array([-0.3, 0.7]))
        assert a == pytest.approx(b, rel=1e-12)

    def test_stencil_checks(self):
        h = HeatParams(0.5, AlphaParam(0.5, 1))
        with pytest.raises(ValidationError):
            heat_equation_residual(h, np.array([0.3, 0.002]), dx=1e-3)
        with pytest.raises(ValidationError):
            heat_equation_residual(h, np.array([0.3, 0.7]), dt=0.6)
