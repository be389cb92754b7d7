import base64
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhalab import qhaop, sampling
from qhalab.core import DiscreteMeasure
from qhalab.errors import FormatError


@given(st.integers(0, 2**32 - 1), st.integers(1, 9))
def test_operator_and_signal_roundtrip_bitwise(seed, L):
    rng = np.random.default_rng(seed)
    for obj, kind in [(sampling.operator(rng, L), "operator"), (sampling.signal(rng, L), "signal")]:
        found, back = qhaop.loads(qhaop.dumps(obj))
        assert found == kind
        assert back.tobytes() == obj.tobytes()


def test_grid_and_measure_roundtrip(tmp_path):
    grid = np.arange(16.0).reshape(4, 4)
    kind, back = qhaop.loads(qhaop.dumps(grid, "grid"))
    assert kind == "grid" and np.array_equal(back, grid)
    mu = DiscreteMeasure(4, {(1, 2): 0.5 - 1j, (3, 3): 2.0})
    path = tmp_path / "mu.qhaop"
    qhaop.save(path, mu)
    kind, back = qhaop.load(path)
    assert kind == "measure" and back == mu


def test_header_layout():
    text = qhaop.dumps(np.eye(2))
    header, payload = text.rstrip("\n").split("\n")
    assert json.loads(header) == {
        "L": 2,
        "format": "qhaop",
        "kind": "operator",
        "layout": "row-major",
        "scalar": "complex-f64-interleaved",
        "version": 1,
    }
    values = np.frombuffer(base64.b64decode(payload), dtype="<f8")
    assert values.tolist() == [1, 0, 0, 0, 0, 0, 1, 0]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "not json\nAAAA\n",
        '{"format": "other", "version": 1}\nAAAA\n',
        '{"format": "qhaop", "version": 2, "L": 1, "kind": "signal"}\nAAAA\n',
        '{"format": "qhaop", "version": 1, "L": 2, "kind": "signal", "layout": "row-major",'
        ' "scalar": "complex-f64-interleaved"}\nAAAAAAAAAAAAAAAAAAAAAA==\n',
        '{"format": "qhaop", "version": 1, "L": 1, "kind": "signal", "layout": "col-major",'
        ' "scalar": "complex-f64-interleaved"}\nAAAA\n',
        '{"format": "qhaop", "version": 1, "L": 1, "kind": "signal", "layout": "row-major",'
        ' "scalar": "complex-f64-interleaved"}\n!!notbase64\n',
        '{"format": "qhaop", "version": 1, "L": 2, "kind": "measure", "layout": "row-major",'
        ' "scalar": "complex-f64-interleaved"}\n[{"k": 1}]\n',
    ],
)
def test_malformed_containers(text):
    with pytest.raises(FormatError):
        qhaop.loads(text)


def test_kind_mismatch_on_write():
    with pytest.raises(FormatError):
        qhaop.dumps(np.ones(3), "operator")
    with pytest.raises(FormatError):
        qhaop.dumps(np.ones((2, 3)))
    with pytest.raises(FormatError):
        qhaop.dumps(np.ones((2, 2)), "measure")
    with pytest.raises(FormatError):
        qhaop.dumps(np.ones((2, 2, 2)))
