"""Regenerate ``values.json`` from mpmath (independent of the package).

Run once; the JSON is committed and the tests read it.  Nothing here
imports ``weinstein``.
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40


def jn(a, z):
    """Normalized Bessel j_a(z) = Gamma(a+1) (z/2)^-a J_a(z), series form for the oracle."""
    z = mp.mpmathify(z)
    if z == 0:
        return mp.mpf(1)
    return mp.hyp0f1(a + 1, -z * z / 4)


def c(v):
    v = mp.mpc(v)
    return [float(v.real), float(v.imag)]


def bessel_table():
    rows = []
    for a in (-0.4, 0, 0.5, 1, 2.5):
        for z in (0.3, 1.0, 5.0, 17.5, 30.0, 250.0, 3 + 4j, 12j, -7j, 2 - 9j, 40j):
            rows.append({"alpha": a, "z": c(z), "value": c(jn(a, z))})
    return rows


def gaussian_transform(a, alpha, d, lam):
    # integrate e^{-a|x|^2} Lambda(lam, x) x_n^{2 alpha + 1} dx numerically, axis by axis
    lam = [mp.mpf(v) for v in lam]
    out = mp.mpf(1)
    for l in lam[:-1]:
        out *= mp.quad(lambda s: mp.exp(-a * s * s) * mp.cos(l * s), [-mp.inf, 0, mp.inf])
    ln = lam[-1]
    out *= mp.quad(lambda s: mp.exp(-a * s * s) * jn(alpha, ln * s) * s ** (2 * alpha + 1),
                   [0, 2, 4, 8, mp.inf])
    return float(out)


def angular_translate_gaussian(a, alpha, x, y):
    # tau_x f(y) for f = exp(-a |.|^2), d = 1, by direct theta integration
    pre = mp.gamma(alpha + 1) / (mp.sqrt(mp.pi) * mp.gamma(alpha + mp.mpf(1) / 2))

    def integrand(t):
        r2 = x[1] ** 2 + y[1] ** 2 + 2 * x[1] * y[1] * mp.cos(t)
        return mp.exp(-a * ((x[0] + y[0]) ** 2 + r2)) * mp.sin(t) ** (2 * alpha)

    return float(pre * mp.quad(integrand, [0, mp.pi / 2, mp.pi]))


def hankel_gauss(nu, t, lam):
    return float(mp.quad(lambda r: mp.exp(-r * r / (4 * t)) * jn(nu, lam * r) * r ** (2 * nu + 1),
                         [0, 2, 4, 8, mp.inf]))


def main():
    data = {
        "bessel": bessel_table(),
        "bessel_half_ipi": float(mp.sinh(mp.pi) / mp.pi),
        "j0_first_zero": float(mp.besseljzero(0, 1)),
        "log_gamma": {str(x): float(mp.loggamma(x)) for x in (0.5, 1, 5, 0.1, 7.25, 49.5)},
        "inversion_constant": [
            {"alpha": a, "d": d,
             "value": float(1 / ((2 * mp.pi) ** d * 2 ** (2 * a) * mp.gamma(a + 1) ** 2))}
            for a, d in ((0, 1), (0.5, 1), (0, 2), (1.5, 1), (-0.25, 3))
        ],
        "translation_constant": {
            str(a): float(1 / mp.quad(lambda t: mp.sin(t) ** (2 * a), [0, mp.pi]))
            for a in (0, 0.5, 1, 1.5, -0.25)
        },
        "half_circle_measure": {
            str(a): float(mp.quad(lambda t: mp.sin(t) ** (2 * a + 1), [0, mp.pi]))
            for a in (0, 0.5, 1.5, -0.25)
        },
        "gaussian_integral_alpha_half": float(mp.sqrt(mp.pi) * mp.quad(
            lambda s: mp.exp(-s * s) * s * s, [0, mp.inf])),
        "gaussian_transform": [
            {"a": a, "alpha": al, "lam": lam, "value": gaussian_transform(a, al, 1, lam)}
            for a, al, lam in ((1.0, 0.5, (0.0, 0.0)), (1.0, 0.5, (1.0, 2.0)),
                               (0.7, 0.0, (-1.5, 0.5)), (1.3, 1.5, (0.3, 3.0)))
        ],
        "gaussian_translation": [
            {"a": a, "alpha": al, "x": x, "y": y,
             "value": angular_translate_gaussian(a, al, [mp.mpf(v) for v in x],
                                                 [mp.mpf(v) for v in y])}
            for a, al, x, y in ((1.0, 0.5, (0.5, 0.4), (0.2, 0.9)),
                                (0.8, 0.0, (-1.0, 1.0), (0.7, 0.3)),
                                (1.2, 1.5, (0.0, 2.0), (0.1, 0.5)))
        ],
        "hankel_gauss": [
            {"nu": nu, "t": t, "lam": lam, "value": hankel_gauss(nu, t, lam)}
            for nu, t, lam in ((1.0, 0.25, 1.5), (0.5, 0.5, 0.0), (2.0, 0.2, 3.0))
        ],
    }
    out = Path(__file__).with_name("values.json")
    out.write_text(json.dumps(data, indent=1))


if __name__ == "__main__":
    main()
