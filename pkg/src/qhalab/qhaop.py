"""QHAOP v1 container: one JSON header line followed by one payload line.

Operators, signals and grids carry a base64 payload of little-endian float64
values with real and imaginary parts interleaved (row-major). Measures carry
a JSON list of ``{"k", "l", "re", "im"}`` records instead.
"""

from __future__ import annotations

import base64
import binascii
import json
from pathlib import Path

import numpy as np

from .core import DiscreteMeasure
from .errors import FormatError

KINDS = ("operator", "signal", "measure", "grid")


def _header(L: int, kind: str) -> dict:
    return {
        "format": "qhaop",
        "version": 1,
        "L": int(L),
        "kind": kind,
        "layout": "row-major",
        "scalar": "complex-f64-interleaved",
    }


def _infer_kind(obj) -> str:
    if isinstance(obj, DiscreteMeasure):
        return "measure"
    arr = np.asarray(obj)
    if arr.ndim == 1:
        return "signal"
    if arr.ndim == 2:
        return "operator"
    raise FormatError(f"cannot serialize an array of shape {arr.shape}")


def dumps(obj, kind: str | None = None) -> str:
    kind = kind or _infer_kind(obj)
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    if kind == "measure":
        if not isinstance(obj, DiscreteMeasure):
            raise FormatError("kind 'measure' needs a DiscreteMeasure")
        atoms = [
            {"k": k, "l": l, "re": float(w.real), "im": float(w.imag)}
            for (k, l), w in obj.atoms.items()
        ]
        return json.dumps(_header(obj.L, kind), sort_keys=True) + "\n" + json.dumps(atoms) + "\n"
    arr = np.ascontiguousarray(obj, dtype=np.complex128)
    expected_ndim = 1 if kind == "signal" else 2
    if arr.ndim != expected_ndim or (arr.ndim == 2 and arr.shape[0] != arr.shape[1]):
        raise FormatError(f"kind {kind!r} does not match shape {arr.shape}")
    raw = arr.view(np.float64).astype("<f8").tobytes()
    payload = base64.b64encode(raw).decode("ascii")
    return json.dumps(_header(arr.shape[0], kind), sort_keys=True) + "\n" + payload + "\n"


def loads(text: str):
    """Returns ``(kind, value)``."""
    lines = text.strip("\n").split("\n")
    if len(lines) != 2:
        raise FormatError("expected a header line and a payload line")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad header: {exc}") from exc
    if header.get("format") != "qhaop" or header.get("version") != 1:
        raise FormatError(f"not a QHAOP v1 container: {header}")
    kind, L = header.get("kind"), header.get("L")
    if kind not in KINDS or not isinstance(L, int) or L < 1:
        raise FormatError(f"bad kind/L in header: {header}")
    if header.get("layout") != "row-major" or header.get("scalar") != "complex-f64-interleaved":
        raise FormatError(f"unsupported layout/scalar in header: {header}")
    if kind == "measure":
        try:
            atoms = {(a["k"], a["l"]): complex(a["re"], a["im"]) for a in json.loads(lines[1])}
        except (json.JSONDecodeError, TypeError, KeyError) as exc:
            raise FormatError(f"bad measure payload: {exc}") from exc
        return kind, DiscreteMeasure(L, atoms)
    try:
        raw = base64.b64decode(lines[1], validate=True)
    except binascii.Error as exc:
        raise FormatError(f"bad base64 payload: {exc}") from exc
    values = np.frombuffer(raw, dtype="<f8").astype(np.float64)
    n = L if kind == "signal" else L * L
    if values.size != 2 * n:
        raise FormatError(f"payload holds {values.size // 2} scalars, header implies {n}")
    arr = values.view(np.complex128).copy()
    return kind, arr if kind == "signal" else arr.reshape(L, L)


def save(path, obj, kind: str | None = None) -> None:
    Path(path).write_text(dumps(obj, kind))


def load(path):
    return loads(Path(path).read_text())
