"""Seeded random instances for property runs and tests."""

from __future__ import annotations

import numpy as np

from .core import DiscreteMeasure


def signal(rng: np.random.Generator, L: int) -> np.ndarray:
    return rng.standard_normal(L) + 1j * rng.standard_normal(L)


def operator(rng: np.random.Generator, L: int) -> np.ndarray:
    return rng.standard_normal((L, L)) + 1j * rng.standard_normal((L, L))


def hermitian(rng: np.random.Generator, L: int) -> np.ndarray:
    A = operator(rng, L)
    return 0.5 * (A + A.conj().T)


def positive(rng: np.random.Generator, L: int, rank: int | None = None, trace: float | None = None) -> np.ndarray:
    X = rng.standard_normal((L, rank or L)) + 1j * rng.standard_normal((L, rank or L))
    P = X @ X.conj().T
    P = 0.5 * (P + P.conj().T)
    if trace is not None:
        P *= trace / np.trace(P).real
    return P


def measure(rng: np.random.Generator, L: int, atoms: int = 5, positive: bool = False) -> DiscreteMeasure:
    ks = rng.integers(0, L, size=atoms)
    ls = rng.integers(0, L, size=atoms)
    if positive:
        ws = rng.random(atoms)
    else:
        ws = rng.standard_normal(atoms) + 1j * rng.standard_normal(atoms)
    out: dict = {}
    for k, l, w in zip(ks, ls, ws):
        out[(int(k), int(l))] = out.get((int(k), int(l)), 0) + w
    return DiscreteMeasure(L, out)
