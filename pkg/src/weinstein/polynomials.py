"""Polynomials even in the last variable and the exact Weinstein Laplacian.

Coefficients are :class:`fractions.Fraction` whenever the inputs are
rational (ints, Fractions, or strings such as ``"3/2"``), so harmonicity is
decided exactly; float inputs fall back to a relative tolerance.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import ValidationError

REAL_TOL = 1e-12


def _coerce(c):
    if isinstance(c, bool):
        raise ValidationError("boolean coefficients are not allowed")
    if isinstance(c, Rational):
        return Fraction(c)
    if isinstance(c, str):
        try:
            return Fraction(c)
        except ValueError:
            return float(c)
    return float(c)


class EvenPolynomial:
    """Sparse polynomial in ``d+1`` variables, even in the last one.

    ``coeffs`` maps multi-indices (tuples) to coefficients.  ``degree`` is
    set when the polynomial is homogeneous of that degree, else ``None``.
    """

    def __init__(self, coeffs, nvars=None):
        terms = {}
        for nu, c in dict(coeffs).items():
            nu = tuple(int(k) for k in nu)
            if nvars is None:
                nvars = len(nu)
            if len(nu) != nvars or any(k < 0 for k in nu):
                raise ValidationError(f"bad multi-index {nu} for {nvars} variables")
            if nu[-1] % 2:
                raise ValidationError(f"odd power of the last variable in {nu}")
            c = _coerce(c)
            if c != 0:
                terms[nu] = terms.get(nu, 0) + c
        if nvars is None:
            raise ValidationError("cannot infer the number of variables of an empty polynomial")
        self.nvars = nvars
        self.coeffs = {nu: c for nu, c in terms.items() if c != 0}

    @classmethod
    def monomial(cls, nu, coeff=1):
        return cls({tuple(nu): coeff})

    @property
    def is_exact(self):
        return all(isinstance(c, Fraction) for c in self.coeffs.values())

    @property
    def degree(self):
        """Common total degree if homogeneous (0 for the zero polynomial), else None."""
        degs = {sum(nu) for nu in self.coeffs}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    @property
    def is_homogeneous(self):
        return self.degree is not None

    def norm(self):
        return max((abs(float(c)) for c in self.coeffs.values()), default=0.0)

    def __eq__(self, other):
        return isinstance(other, EvenPolynomial) and self.nvars == other.nvars \
            and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for nu, c in other.coeffs.items():
            out[nu] = out.get(nu, 0) + c
        return EvenPolynomial(out, self.nvars)

    def __mul__(self, k):
        if isinstance(k, EvenPolynomial):
            if k.nvars != self.nvars:
                raise ValidationError("polynomials in different numbers of variables")
            out = {}
            for nu, c in self.coeffs.items():
                for mu, b in k.coeffs.items():
                    key = tuple(i + j for i, j in zip(nu, mu))
                    out[key] = out.get(key, 0) + c * b
            return EvenPolynomial(out, self.nvars)
        return EvenPolynomial({nu: c * _coerce(k) for nu, c in self.coeffs.items()}, self.nvars)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1) * other

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{nu}" for nu, c in sorted(self.coeffs.items()))
        return f"EvenPolynomial({terms or '0'})"

    def __call__(self, x):
        return evaluate(self, x)

    def to_json(self):
        return [{"nu": list(nu), "coeff": str(c) if isinstance(c, Fraction) else c}
                for nu, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data, nvars=None):
        if not data and nvars is None:
            raise ValidationError("empty polynomial JSON needs nvars")
        try:
            coeffs = {tuple(t["nu"]): t["coeff"] for t in data}
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"polynomial JSON must be a list of {{nu, coeff}} terms: {exc!r}") from exc
        return cls(coeffs, nvars)


def weinstein_laplacian(P: EvenPolynomial, alpha) -> EvenPolynomial:
    """Exact ``Delta_d P + P_nn + (2 alpha + 1)/x_n P_n``.

    On monomials: ``x^nu -> sum_j nu_j (nu_j - 1) x^{nu - 2 e_j}
    + (2 alpha + 1) nu_n x^{nu - 2 e_n}``.
    """
    a = _coerce(alpha)
    if not P.is_exact:
        a = float(a)
    k = 2 * a + 1
    n = P.nvars
    out = {}
    for nu, c in P.coeffs.items():
        for j in range(n):
            m = nu[j]
            factor = m * (m - 1)
            if j == n - 1:
                factor = factor + k * m
            if m >= 2 and factor != 0:
                mu = nu[:j] + (m - 2,) + nu[j + 1:]
                out[mu] = out.get(mu, 0) + factor * c
    return EvenPolynomial(out, n)


def is_generalized_harmonic(P: EvenPolynomial, alpha) -> bool:
    """True iff ``P`` is homogeneous and annihilated by the Weinstein Laplacian."""
    if not P.is_homogeneous:
        raise ValidationError("generalized harmonics must be homogeneous")
    L = weinstein_laplacian(P, alpha)
    if P.is_exact and isinstance(_coerce(alpha), Fraction):
        return not L.coeffs
    return L.norm() <= REAL_TOL * max(P.norm(), 1.0)


def evaluate(P: EvenPolynomial, x):
    """Value of ``P`` at points ``x`` (shape ``(..., d+1)``), exact for scalar rationals."""
    if isinstance(x, (list, tuple)) and all(isinstance(v, (Rational, str)) for v in x):
        xs = [_coerce(v) for v in x]
        total = Fraction(0)
        for nu, c in P.coeffs.items():
            term = c
            for v, k in zip(xs, nu):
                term *= v ** k
            total += term
        return total
    x = np.asarray(x)
    if x.shape[-1] != P.nvars:
        raise ValidationError(f"points must have {P.nvars} coordinates")
    out = np.zeros(x.shape[:-1], dtype=np.result_type(x.dtype, float))
    powers = [{} for _ in range(P.nvars)]
    for nu, c in P.coeffs.items():
        term = float(c)
        for j, k in enumerate(nu):
            if k:
                if k not in powers[j]:
                    powers[j][k] = x[..., j] ** k
                term = term * powers[j][k]
        out = out + term
    return out
