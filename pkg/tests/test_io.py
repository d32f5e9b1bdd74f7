import json

import numpy as np
import pytest

from weinstein import io as wio
from weinstein.errors import ValidationError
from weinstein.functions import bump, gaussian, sample_spec
from weinstein.grids import build_box_grid, sample
from weinstein.special import AlphaParam


@pytest.fixture
def fn():
    p = AlphaParam(0.5, 1)
    g = build_box_grid(p, (3.0, 2.5), (9, 8))
    f = sample(lambda x: np.exp(-np.sum(x ** 2, -1)) * (1 + 0.3j * x[..., 0]), g)
    f.label = "test"
    return f


def test_json_round_trip_is_bit_identical(fn, tmp_path):
    path = tmp_path / "f.json"
    wio.write_json(fn, path)
    back = wio.read_json(path)
    assert np.array_equal(back.values, fn.values)
    for a, b in zip(back.grid.nodes + back.grid.weights, fn.grid.nodes + fn.grid.weights):
        assert np.array_equal(a, b)
    assert back.grid.extents == fn.grid.extents
    assert back.grid.rules == fn.grid.rules
    assert back.label == "test" and back.support_radius is None
    assert back.param == fn.param
    assert wio.dumps(back) == wio.dumps(fn)


def test_source_reattaches_exact_callable():
    p = AlphaParam(0.0, 1)
    f = sample_spec("bump:R=1", build_box_grid(p, 1.0, 16))
    back = wio.from_dict(json.loads(wio.dumps(f)))
    assert back.source == "bump:R=1" and back.support_radius == 1.0
    pt = np.array([[0.3, 0.2]])
    assert back.evaluate(pt)[0] == pytest.approx(bump(1.0)(pt)[0])


def test_csv_layout(fn):
    text = wio.to_csv(fn)
    lines = text.strip().splitlines()
    assert lines[0] == "x1,x2,weight,re,im"
    assert len(lines) == 1 + fn.values.size
    row = [float(c) for c in lines[1].split(",")]
    assert row[:2] == list(fn.grid.points()[0])
    assert complex(row[3], row[4]) == fn.values.ravel()[0]
    assert "np." not in text


def test_dash_writes_stdout(fn, capsys):
    wio.write_json(fn, "-")
    out = capsys.readouterr().out
    assert json.loads(out)["alpha"] == 0.5
    wio.write_csv(fn, "-")
    assert capsys.readouterr().out.startswith("x1,x2")


def test_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(OSError):
        wio.read_json(bad)
    with pytest.raises(OSError):
        wio.read_json(tmp_path / "missing.json")
    with pytest.raises(ValidationError):
        wio.from_dict({"alpha": 0.5})
    f = sample(gaussian(1.0), build_box_grid(AlphaParam(0.5, 1), 2.0, 8))
    data = wio.to_dict(f)
    data["values"] = [1.0] * len(data["values"])
    with pytest.raises(ValidationError):
        wio.from_dict(data)
