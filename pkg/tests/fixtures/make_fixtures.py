"""Regenerates the frozen reference values in this directory from the slow
oracles (never from qhalab's fast paths). Run from the repository root:

    python3 tests/fixtures/make_fixtures.py
"""

import json
import sys
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))
import oracles  # noqa: E402


def centred(L):
    c = np.arange(L)
    return np.where(c > L // 2, c - L, c)


def shifted_columns(g, points):
    L = len(g)
    return np.stack([oracles.shift(L, k, l) @ g for k, l in points], axis=1)


def plateau(L=96, a=2, b=2, delta=0.3, radii=(6, 12, 18, 24, 30, 36, 42)):
    g = oracles.gaussian(L)
    lattice = [(k, l) for k in range(0, L, a) for l in range(0, L, b)]
    V = shifted_columns(g, lattice)
    h = oracles.inv_sqrt(V @ V.conj().T) @ g  # tightened window, S' = h (x) h
    c = centred(L)
    rows = []
    for R in radii:
        pts = [(k, l) for k, l in lattice if abs(c[k]) <= R and abs(c[l]) <= R]
        W = shifted_columns(h, pts)
        ev = np.linalg.eigvalsh(W @ W.conj().T)
        target = len(pts) * float(np.vdot(h, h).real)
        count = int(np.sum(ev > 1 - delta))
        rows.append({"R": R, "points": len(pts), "count_above": count, "target": target,
                     "ratio": count / target, "eig_min": float(ev.min()), "eig_max": float(ev.max())})
    return rows


def convergence(L=64, widths=(8, 8), lattices=((16, 16), (8, 8), (4, 4), (2, 2), (1, 1))):
    g = oracles.gaussian(L)
    c = centred(L)
    m = np.exp(-np.pi * ((c[:, None] / widths[0]) ** 2 + (c[None, :] / widths[1]) ** 2))
    full = [(k, l) for k in range(L) for l in range(L)]
    V = shifted_columns(g, full)
    ref = (V * (m.ravel() / L)) @ V.conj().T
    out = []
    for a, b in lattices:
        pts = [(k, l) for k in range(0, L, a) for l in range(0, L, b)]
        W = shifted_columns(g, pts)
        w = np.array([m[k, l] for k, l in pts]) * a * b / L
        out.append({"a": a, "b": b, "error": oracles.trace_norm((W * w) @ W.conj().T - ref)})
    return out


def span_dimension(S):
    L = S.shape[0]
    rows = []
    for k in range(L):
        for l in range(L):
            P = oracles.shift(L, k, l)
            rows.append((P @ S @ P.conj().T).ravel())
    return int(np.linalg.matrix_rank(np.array(rows)))


def spanning():
    g4 = oracles.gaussian(4, center=0.3, freq=0.2)
    g2 = oracles.gaussian(2, center=0.3, freq=0.2)
    S4, S2 = np.outer(g4, g4.conj()), np.outer(g2, g2.conj())
    return {
        "L4": {"dimension": span_dimension(S4), "min_abs_fw": float(np.abs(oracles.fourier_wigner(S4)).min())},
        "L2": {"dimension": span_dimension(S2), "min_abs_fw": float(np.abs(oracles.fourier_wigner(S2)).min())},
        "identity_L4_min_abs_fw": float(np.abs(oracles.fourier_wigner(np.eye(4))).min()),
    }


if __name__ == "__main__":
    data = {"plateau": plateau(), "convergence": convergence(), "spanning": spanning()}
    (HERE / "reference.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(json.dumps(data, indent=2))
