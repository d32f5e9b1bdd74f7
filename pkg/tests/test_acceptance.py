"""Acceptance criteria, each checked for alpha in {0, 1/2, 3/2} with d = 1.

Every criterion appends one PASS/FAIL line to ``REPORT``; the lines are
printed at the end of the pytest session and when this file is run directly::

    python3 tests/test_acceptance.py
"""
import sys
from functools import lru_cache

import numpy as np
import pytest

from weinstein import AlphaParam
from weinstein import verify

ALPHAS = (0.0, 0.5, 1.5)
TIME_LIMIT = 60.0
REPORT = []


@lru_cache(maxsize=None)
def suite(name, alpha):
    return verify.run_suite(name, AlphaParam(alpha, 1))


def heat_kernel(d):
    return d["sup_error"] <= 1e-7 and d["mass_error"] <= 1e-8, \
        f"sup {d['sup_error']:.1e}, mass {d['mass_error']:.1e}"


def plancherel(d):
    return d["count"] == 20 and max(d["max_plancherel"], d["max_parseval"]) <= 1e-6, \
        f"defect {max(d['max_plancherel'], d['max_parseval']):.1e} over {d['count']}"


def inversion(d):
    return d["max_sup_relative"] <= 1e-6, f"sup rel {d['max_sup_relative']:.1e}"


def translation(d):
    ok = d["max_disagreement"] <= 1e-6 and d["max_norm_excess"] <= 1e-6
    return ok, f"agreement {d['max_disagreement']:.1e}, norm excess {d['max_norm_excess']:.1e}"


def convolution(d):
    ok = d["max_disagreement"] <= 1e-6 and d["max_young_excess"] <= 1e-6
    return ok, f"agreement {d['max_disagreement']:.1e}, Young excess {d['max_young_excess']:.2f}"


def pw_type(d):
    ok = (0.85 <= d["R_hat"] <= 1.05 and abs(d["dilation_ratio"] - 2) <= 0.1
          and d["bound_max_ratio"] <= 1 + 1e-6)
    return ok, (f"R_hat {d['R_hat']:.4f}, ratio {d['dilation_ratio']:.4f}, "
                f"bound {d['bound_max_ratio']:.3f}")


def support_growth(d):
    ok = d["outside_relative_max"] <= 1e-8 and d["R_hat"] <= 2.1
    return ok, f"leak {d['outside_relative_max']:.1e}, R_hat {d['R_hat']:.4f}"


def modulus(d):
    r = d["ratios"]
    return len(r) == 6 and max(r) / min(r) < 2, f"spread {max(r) / min(r):.3f}"


def approx_identity(d):
    e = d["relative_error"]
    root = d["error_over_sqrt_t"]
    ok = (all(a > b for a, b in zip(e, e[1:])) and e[-1] <= 1e-2
          and max(root) <= 2 * root[0])
    return ok, f"final {e[-1]:.4f}, err/sqrt(t) <= {max(root):.3f}"


def independence(d):
    ok = d["sigma_min"] > 1e-3 and d["sigma_min_duplicated"] < 1e-12
    return ok, f"sigma_min {d['sigma_min']:.3f}, duplicated {d['sigma_min_duplicated']:.1e}"


def harmonics(d):
    return d["accepts_harmonic"] and d["rejects_norm_squared"], "exact"


def hankel_reduction(d):
    return d["residual"] <= 1e-6, f"residual {d['residual']:.1e}"


CRITERIA = [
    (1, "heat kernel transform and unit mass", "heat-kernel", heat_kernel),
    (2, "Plancherel and Parseval", "plancherel", plancherel),
    (3, "inversion round trip", "inversion", inversion),
    (4, "translation agreement and contraction", "translation", translation),
    (5, "convolution theorem and Young", "convolution", convolution),
    (6, "exponential type recovery", "pw-type", pw_type),
    (7, "support growth under translation", "support-growth", support_growth),
    (8, "translation modulus shape", "modulus", modulus),
    (9, "heat approximate identity", "heat-approx-identity", approx_identity),
    (10, "kernel independence", "independence", independence),
    (11, "generalized harmonics", "harmonics", harmonics),
    (12, "radial Hankel reduction", "hankel-reduction", hankel_reduction),
]


def evaluate(number, title, name, check):
    parts, passed = [], True
    for a in ALPHAS:
        res = suite(name, a)
        ok, summary = check(res["details"])
        ok = bool(ok) and res["seconds"] <= TIME_LIMIT
        passed &= ok
        parts.append(f"alpha={a:g}: {summary}, {res['seconds']:.1f}s{'' if ok else ' FAIL'}")
    line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d} ({title}): " + "; ".join(parts)
    REPORT.append(line)
    print(line)
    return passed, line


@pytest.mark.slow
@pytest.mark.parametrize("number,title,name,check", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(number, title, name, check):
    passed, line = evaluate(number, title, name, check)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(*c)[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
