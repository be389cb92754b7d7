"""Window generators on Z_L."""

from __future__ import annotations

import numpy as np
from numpy.polynomial.hermite import hermval

_WRAPS = 3


def _normalize(g: np.ndarray) -> np.ndarray:
    return g / np.linalg.norm(g)


def periodized_gaussian(L: int, width: float = 1.0, center: float = 0.0, freq: float = 0.0) -> np.ndarray:
    """``sum_{|j| <= 3} exp(-pi (n - c + jL)^2 / (width L))``, unit norm.

    ``center`` and ``freq`` may be fractional; a fractional offset breaks the
    parity symmetry, which is what zero-free Fourier-Wigner windows need.
    """
    n = np.arange(L)[:, None] - center + L * np.arange(-_WRAPS, _WRAPS + 1)[None, :]
    g = np.exp(-np.pi * n**2 / (width * L)).astype(complex)
    if freq:
        g = g * np.exp(2j * np.pi * freq * n / L)
    return _normalize(g.sum(axis=1))


def hermite_window(L: int, order: int, width: float = 1.0) -> np.ndarray:
    """Periodized Hermite function of the given order."""
    t = (np.arange(L)[:, None] + L * np.arange(-_WRAPS, _WRAPS + 1)[None, :]) / np.sqrt(width * L)
    coeffs = np.zeros(order + 1)
    coeffs[order] = 1.0
    h = hermval(np.sqrt(2 * np.pi) * t, coeffs) * np.exp(-np.pi * t**2)
    return _normalize(h.sum(axis=1).astype(complex))


def random_window(L: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return _normalize(rng.standard_normal(L) + 1j * rng.standard_normal(L))
