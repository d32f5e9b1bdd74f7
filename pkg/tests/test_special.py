import math

import numpy as np
import pytest
from scipy import integrate as sint

from weinstein.errors import DomainError, RangeError
from weinstein.special import (BESSEL_MAX_ARG, AlphaParam, bessel_j_normalized, bessel_series,
                               inversion_constant, log_gamma, sphere_measure,
                               translation_constant)


class TestAlphaParam:
    def test_valid(self):
        p = AlphaParam(0.5, 2)
        assert p.ndim == 3
        assert p.weight_exponent == 2.0

    @pytest.mark.parametrize("alpha", [-0.5, -0.6, float("nan"), float("inf")])
    def test_rejects_bad_alpha(self, alpha):
        with pytest.raises(DomainError):
            AlphaParam(alpha, 1)

    def test_rejects_bad_dimension(self):
        with pytest.raises(Exception):
            AlphaParam(0.5, 0)


class TestBessel:
    def test_zero_argument(self):
        for a in (-0.4, 0, 0.5, 3.0):
            assert bessel_j_normalized(a, 0.0) == 1.0
            assert bessel_j_normalized(a, 0j) == 1.0

    def test_half_order_zero_at_pi(self):
        assert abs(bessel_j_normalized(0.5, np.pi)) < 1e-15

    def test_half_order_imaginary_pi(self, oracle):
        v = bessel_j_normalized(0.5, 1j * np.pi)
        assert v == pytest.approx(oracle["bessel_half_ipi"], rel=1e-13)
        assert abs(v.imag) < 1e-15

    def test_first_zero_of_order_zero(self, oracle):
        assert abs(bessel_j_normalized(0.0, oracle["j0_first_zero"])) < 1e-15

    def test_against_frozen_table(self, oracle):
        for row in oracle["bessel"]:
            z = complex(*row["z"])
            want = complex(*row["value"])
            got = complex(bessel_j_normalized(row["alpha"], np.array([z]))[0])
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want)), row

    def test_real_input_gives_real_output(self):
        out = bessel_j_normalized(1.0, np.linspace(0, 50, 11))
        assert out.dtype == float

    def test_series_matches_closed_form_at_half(self):
        z = np.linspace(0.1, 8, 40)
        assert np.allclose(bessel_series(0.5, z).real, np.sin(z) / z, rtol=1e-12, atol=0)

    def test_range_error(self):
        with pytest.raises(RangeError):
            bessel_j_normalized(0.5, BESSEL_MAX_ARG * 1.01)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            bessel_j_normalized(-0.5, 1.0)

    @pytest.mark.parametrize("alpha", [-0.4, 0, 0.5, 1, 2.5])
    def test_bounded_by_one_on_reals(self, alpha):
        z = np.linspace(-40, 40, 4001)
        assert np.max(np.abs(bessel_j_normalized(alpha, z))) <= 1 + 1e-12


class TestConstants:
    @pytest.mark.parametrize("x,want", [(1, 0.0), (0.5, math.log(math.sqrt(math.pi))),
                                        (5, math.log(24))])
    def test_log_gamma_examples(self, x, want):
        assert log_gamma(x) == pytest.approx(want, abs=1e-15)

    def test_log_gamma_frozen(self, oracle):
        for x, want in oracle["log_gamma"].items():
            assert log_gamma(float(x)) == pytest.approx(want, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize("x", [0, -1.0])
    def test_log_gamma_domain(self, x):
        with pytest.raises(DomainError):
            log_gamma(x)

    def test_inversion_constant(self, oracle):
        for row in oracle["inversion_constant"]:
            got = inversion_constant(AlphaParam(row["alpha"], row["d"]))
            assert got == pytest.approx(row["value"], rel=1e-13)
        assert inversion_constant(AlphaParam(0.5, 1)) == pytest.approx(1 / math.pi ** 2)

    def test_inversion_constant_large_alpha(self):
        # log-space evaluation stays finite where Gamma(alpha+1)^2 alone would overflow
        got = inversion_constant(AlphaParam(40.0, 1))
        want = -(math.log(2 * math.pi) + 80 * math.log(2) + 2 * math.lgamma(41))
        assert math.log(got) == pytest.approx(want, rel=1e-14)

    def test_translation_constant(self, oracle):
        assert translation_constant(0.5) == pytest.approx(0.5, rel=1e-15)
        assert translation_constant(0) == pytest.approx(1 / math.pi, rel=1e-15)
        assert translation_constant(1) == pytest.approx(2 / math.pi, rel=1e-15)
        for a, want in oracle["translation_constant"].items():
            assert translation_constant(float(a)) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("alpha", [0, 0.5, 1.5, 3.0])
    def test_translation_constant_normalizes(self, alpha):
        integral, _ = sint.quad(lambda t: np.sin(t) ** (2 * alpha), 0, np.pi, epsabs=1e-13)
        assert translation_constant(alpha) * integral == pytest.approx(1, abs=1e-10)

    def test_sphere_measure(self, oracle):
        for a, want in oracle["half_circle_measure"].items():
            assert sphere_measure(AlphaParam(float(a), 1)) == pytest.approx(want, rel=1e-12)
