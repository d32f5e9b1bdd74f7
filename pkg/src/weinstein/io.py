"""JSON and CSV (de)serialization of sampled functions.

JSON layout::

    {"alpha": 0.5, "d": 1,
     "axes": [{"nodes": [...], "weights": [...], "extent": 7.0, "rule": "gauss-legendre"}, ...],
     "values": [[re, im], ...],            # row-major over the axes
     "support_radius": 1.0 | null, "label": "...", "source": "bump:R=1" | null}

Python's ``json`` writes floats with ``repr``, so a write/read round trip is
bit-identical.
"""
from __future__ import annotations

import csv
import io
import json
import sys

import numpy as np

from .errors import ValidationError
from .grids import BoxGrid, SampledFunction
from .special import AlphaParam


def to_dict(f: SampledFunction) -> dict:
    g = f.grid
    flat = f.values.ravel()
    return {
        "alpha": g.param.alpha,
        "d": g.param.d,
        "axes": [
            {"nodes": x.tolist(), "weights": w.tolist(), "extent": X, "rule": r}
            for x, w, X, r in zip(g.nodes, g.weights, g.extents, g.rules)
        ],
        "values": np.stack([flat.real, flat.imag], axis=-1).tolist(),
        "support_radius": f.support_radius,
        "label": f.label,
        "source": f.source,
    }


def from_dict(data: dict) -> SampledFunction:
    try:
        p = AlphaParam(float(data["alpha"]), int(data["d"]))
        axes = data["axes"]
        nodes = tuple(np.asarray(a["nodes"], dtype=float) for a in axes)
        weights = tuple(np.asarray(a["weights"], dtype=float) for a in axes)
        extents = tuple(float(a.get("extent", np.max(np.abs(x)))) for a, x in zip(axes, nodes))
        rules = tuple(str(a.get("rule", "gauss-legendre")) for a in axes)
        vals = np.asarray(data["values"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed function file: {exc!r}") from exc
    if vals.ndim != 2 or vals.shape[1] != 2:
        raise ValidationError("values must be a list of [re, im] pairs")
    grid = BoxGrid(p, nodes, weights, extents, rules)
    f = SampledFunction(grid, vals[:, 0] + 1j * vals[:, 1], data.get("support_radius"),
                        data.get("label", ""), source=data.get("source"))
    if f.source:
        from .functions import parse_spec
        f.func = parse_spec(f.source, p)[0]
    return f


def dumps(f: SampledFunction) -> str:
    return json.dumps(to_dict(f))


def write_json(f: SampledFunction, path):
    text = dumps(f)
    if str(path) == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def read_json(path) -> SampledFunction:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise OSError(f"cannot parse {path}: {exc}") from exc
    return from_dict(data)


def to_csv(f: SampledFunction) -> str:
    """Flat table: one row per node with coordinates, weight and the value."""
    buf = io.StringIO()
    w = csv.writer(buf)
    nd = f.param.ndim
    w.writerow([f"x{j + 1}" for j in range(nd)] + ["weight", "re", "im"])
    pts = f.grid.points()
    wts = f.grid.weight_array().ravel()
    for x, wt, v in zip(pts, wts, f.values.ravel()):
        row = [*x, wt, v.real, v.imag]
        w.writerow([repr(float(c)) for c in row])
    return buf.getvalue()


def write_csv(f: SampledFunction, path):
    text = to_csv(f)
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
