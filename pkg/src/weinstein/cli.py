"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 numerical range,
4 a verification property failed.  Diagnostics go to stderr; with
``--out -`` stdout carries only data.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import io as wio
from .errors import DomainError, RangeError, ValidationError
from .functions import sample_spec
from .grids import build_box_grid, lp_norm
from .heat import heat_evolve
from .paley_wiener import DEFAULT_S_GRID, default_directions, estimate_exponential_type
from .polynomials import EvenPolynomial, is_generalized_harmonic, weinstein_laplacian
from .special import AlphaParam
from .transform import forward, inverse
from .translation import convolve, translate
from . import verify as wverify

log = logging.getLogger("weinstein")

DEFAULT_RESOLUTION = 128
DEFAULT_EXTENT = 7.0
DEFAULT_SPEC_EXTENT = 14.0


def default_resolution() -> int:
    env = os.environ.get("WEINSTEIN_DEFAULT_RESOLUTION")
    if env is None:
        return DEFAULT_RESOLUTION
    try:
        n = int(env)
    except ValueError:
        raise ValidationError(f"WEINSTEIN_DEFAULT_RESOLUTION must be an integer, got {env!r}")
    return n


def _floats(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}")


def _param(args) -> AlphaParam:
    return AlphaParam(args.alpha, args.d)


def _grid(p, extent, n, rule):
    ext = _floats(extent) if isinstance(extent, str) else [extent]
    return build_box_grid(p, ext if len(ext) > 1 else ext[0], n, rule)


def _spatial_extent(args, spec):
    if args.extent is not None:
        return args.extent
    if spec and spec.startswith("bump"):
        # tight box around the support
        from .functions import parse_spec
        return parse_spec(spec, _param(args))[1]
    return DEFAULT_EXTENT


def _load(args, which=""):
    path = getattr(args, "in" + which)
    spec = getattr(args, "func" + which)
    if path:
        return wio.read_json(path)
    if not spec:
        raise ValidationError("provide --func or --in")
    p = _param(args)
    n = args.n or default_resolution()
    return sample_spec(spec, _grid(p, _spatial_extent(args, spec), n, args.rule))


def _spectral(args, p):
    n = args.spec_n or args.n or default_resolution()
    return _grid(p, args.spec_extent, n, args.rule)


def _emit(f, args):
    if args.format == "csv":
        wio.write_csv(f, args.out)
    else:
        wio.write_json(f, args.out)
    if args.out != "-":
        log.info("wrote %s", args.out)


def _echo(**kw):
    print(json.dumps(kw), file=sys.stderr)


def cmd_transform(args):
    f = _load(args)
    spec = _spectral(args, f.param)
    F = forward(f, spec, mode=args.mode)
    _echo(alpha=f.param.alpha, d=f.param.d, grid=f.grid.shape, spectral_grid=spec.shape,
          sup_transform=lp_norm(F, np.inf), l1_input=lp_norm(f, 1))
    _emit(F, args)
    return 0


def cmd_inverse(args):
    g = _load(args)
    p = g.param
    out = _grid(p, args.extent or DEFAULT_EXTENT, args.n or default_resolution(), args.rule)
    _emit(inverse(g, out, mode=args.mode), args)
    return 0


def cmd_translate(args):
    f = _load(args)
    x = _floats(args.x)
    _emit(translate(f, x, method=args.method, nodes=args.nodes,
                    spectral=_spectral(args, f.param) if args.method == "spectral" else None), args)
    return 0


def _load_pair(args):
    """Both convolution inputs on one grid; built-in specs adopt a file input's grid."""
    path1, path2 = getattr(args, "in"), args.in2
    if path1 and path2:
        return wio.read_json(path1), wio.read_json(path2)
    if path1 or path2:
        loaded = wio.read_json(path1 or path2)
        spec = args.func2 if path1 else args.func
        if not spec:
            raise ValidationError("provide --func/--in and --func2/--in2")
        other = sample_spec(spec, loaded.grid)
        return (loaded, other) if path1 else (other, loaded)
    if not (args.func and args.func2):
        raise ValidationError("provide --func/--in and --func2/--in2")
    p = _param(args)
    ext = args.extent
    if ext is None:
        ext = max(float(_spatial_extent(args, s)) for s in (args.func, args.func2))
    grid = _grid(p, ext, args.n or default_resolution(), args.rule)
    return sample_spec(args.func, grid), sample_spec(args.func2, grid)


def cmd_convolve(args):
    f, g = _load_pair(args)
    spec = _spectral(args, f.param) if args.method == "spectral" else None
    _emit(convolve(f, g, method=args.method, spectral=spec, nodes=args.nodes), args)
    return 0


def cmd_heat_evolve(args):
    f = _load(args)
    spec = _spectral(args, f.param) if args.method == "spectral" else None
    _emit(heat_evolve(f, args.t, method=args.method, spectral=spec), args)
    return 0


def cmd_harmonic_check(args):
    text = args.poly
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
        alpha = Fraction(args.alpha)
    except (json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad harmonic-check input: {exc}") from exc
    AlphaParam(float(alpha), args.d)
    P = EvenPolynomial.from_json(data, nvars=args.d + 1)
    report = {
        "alpha": str(alpha),
        "harmonic": is_generalized_harmonic(P, alpha),
        "laplacian": weinstein_laplacian(P, alpha).to_json(),
        "exact": P.is_exact,
    }
    print(json.dumps(report))
    return 0


def cmd_pw_estimate(args):
    f = _load(args)
    if f.support_radius is None:
        raise ValidationError("pw-estimate needs a compactly supported input (declared support)")
    s = np.linspace(args.smin, args.smax, args.ns) if (args.smin or args.smax) else DEFAULT_S_GRID
    dirs = default_directions(f.param, n_random=args.directions, seed=args.seed)
    est = estimate_exponential_type(f, dirs, s)
    report = est.to_json()
    report["support_radius"] = f.support_radius
    text = json.dumps(report, indent=2)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def cmd_verify(args):
    p = _param(args)
    results = wverify.run(args.suite, p)
    print(json.dumps({"alpha": p.alpha, "d": p.d, "results": results}, indent=2, default=float))
    for r in results:
        log.info("%-22s %s", r["name"], "PASS" if r["ok"] else "FAIL")
    return 0 if all(r["ok"] for r in results) else 4


def build_parser():
    parser = argparse.ArgumentParser(prog="weinstein", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, second=False):
        sp.add_argument("--alpha", type=float, default=0.5)
        sp.add_argument("--d", type=int, default=1)
        sp.add_argument("--func", help="built-in function spec, e.g. gaussian:a=1 or bump:R=1")
        sp.add_argument("--in", dest="in", help="input SampledFunction JSON")
        if second:
            sp.add_argument("--func2")
            sp.add_argument("--in2", dest="in2")
        sp.add_argument("--extent", default=None, help="spatial box half-width(s), comma separated")
        sp.add_argument("--n", type=int, default=None, help="nodes per axis")
        sp.add_argument("--rule", default="gauss-legendre", choices=["gauss-legendre", "trapezoid"])
        sp.add_argument("--spec-extent", default=str(DEFAULT_SPEC_EXTENT))
        sp.add_argument("--spec-n", type=int, default=None)
        sp.add_argument("--out", default="-")
        sp.add_argument("--format", default="json", choices=["json", "csv"])

    sp = sub.add_parser("transform", help="forward Weinstein transform")
    common(sp)
    sp.add_argument("--mode", default="separable", choices=["separable", "direct"])
    sp.set_defaults(run=cmd_transform)

    sp = sub.add_parser("inverse", help="inverse Weinstein transform")
    common(sp)
    sp.add_argument("--mode", default="separable", choices=["separable", "direct"])
    sp.set_defaults(run=cmd_inverse)

    sp = sub.add_parser("translate", help="generalized translation tau_x")
    common(sp)
    sp.add_argument("--x", required=True, help="translation point, comma separated")
    sp.add_argument("--method", default="angular", choices=["angular", "spectral"])
    sp.add_argument("--nodes", type=int, default=64)
    sp.set_defaults(run=cmd_translate)

    sp = sub.add_parser("convolve", help="Weinstein convolution of two functions")
    common(sp, second=True)
    sp.add_argument("--method", default="spectral", choices=["spectral", "direct"])
    sp.add_argument("--nodes", type=int, default=32)
    sp.set_defaults(run=cmd_convolve)

    sp = sub.add_parser("heat-evolve", help="convolve with the heat kernel E_t")
    common(sp)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--method", default="spectral", choices=["spectral", "direct"])
    sp.set_defaults(run=cmd_heat_evolve)

    sp = sub.add_parser("harmonic-check", help="exact generalized-harmonic test")
    sp.add_argument("--alpha", default="1/2", help="rational alpha, e.g. 1/2 or 0.5")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--poly", required=True, help="polynomial JSON or a path to it")
    sp.set_defaults(run=cmd_harmonic_check)

    sp = sub.add_parser("pw-estimate", help="exponential type of a compactly supported function")
    common(sp)
    sp.add_argument("--directions", type=int, default=8, help="number of random directions")
    sp.add_argument("--smin", type=float, default=None)
    sp.add_argument("--smax", type=float, default=None)
    sp.add_argument("--ns", type=int, default=17)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(run=cmd_pw_estimate)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", default="all",
                    help="suite name or 'all': " + ", ".join(wverify.SUITES))
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--d", type=int, default=1)
    sp.set_defaults(run=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "smax", None) is not None and getattr(args, "smin", None) is None:
        args.smin = float(DEFAULT_S_GRID[0]) if args.smax > DEFAULT_S_GRID[0] else args.smax / 3
    if getattr(args, "smin", None) is not None and getattr(args, "smax", None) is None:
        args.smax = float(DEFAULT_S_GRID[-1])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.run(args)
    except RangeError as exc:
        msg = f"range error: {exc}"
        if exc.suggestion is not None:
            msg += f" (suggested smax <= {exc.suggestion:.4g})"
        print(msg, file=sys.stderr)
        return 3
    except (ValidationError, DomainError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
