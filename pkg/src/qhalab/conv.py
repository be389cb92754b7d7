"""Measure-operator, function-operator and operator-operator convolutions,
the Fourier-Wigner transform and the symplectic Fourier transform.

Normalisations on Z_L x Z_L (see also README):

=============================  ===========================================
function_op_conv(f, S)         (1/L) sum_z f(z) pi(z) S pi(z)^*
measure_op_conv(mu, S)         sum_atoms w(z) pi(z) S pi(z)^*   (no 1/L)
op_op_conv(T, S)(z)            tr(T pi(z) S-check pi(z)^*)     (no 1/L)
fourier_wigner(S)(z)           tr(pi(z)^* S)                    (no 1/L)
inverse_fourier_wigner(F)      (1/L) sum_z F(z) pi(z)
symplectic_dft(grid)(z)        (1/L) sum_w g(w) exp(-2 pi i sigma(z, w)/L)
symplectic_dft(measure)(z)     sum_atoms w exp(-2 pi i sigma(z, w)/L)
=============================  ===========================================
"""

from __future__ import annotations

import numpy as np

from .core import DiscreteMeasure, _phase_table, as_operator, parity_conjugate
from .errors import DimensionMismatch


def _grid(g, L: int | None = None) -> np.ndarray:
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionMismatch(f"phase-space grids are LxL, got {g.shape}")
    if L is not None and g.shape[0] != L:
        raise DimensionMismatch(f"grid is {g.shape}, operator needs L={L}")
    return g


def shift_average(weights, S) -> np.ndarray:
    """``sum_z weights[z] pi(z) S pi(z)^*`` in O(L^3).

    Entry ``[m, n]`` equals ``sum_k S[m-k, n-k] F[k, m-n]`` where
    ``F[k, d] = sum_l weights[k, l] exp(2 pi i l d / L)``. Rows of ``weights``
    that vanish identically are skipped, so sparse measures stay cheap.
    """
    S = as_operator(S)
    L = S.shape[0]
    W = _grid(weights, L)
    rows = np.flatnonzero(np.any(W != 0, axis=1))
    out = np.zeros((L, L), dtype=complex)
    if rows.size == 0:
        return out
    F = W[rows] @ _phase_table(L)
    n = np.arange(L)
    diff = (n[:, None] - n[None, :]) % L
    for i, k in enumerate(rows):
        out += np.roll(S, (k, k), axis=(0, 1)) * F[i][diff]
    return out


def measure_op_conv(mu: DiscreteMeasure, S) -> np.ndarray:
    S = as_operator(S)
    if mu.L != S.shape[0]:
        raise DimensionMismatch(f"measure on Z_{mu.L}, operator is {S.shape}")
    return shift_average(mu.to_grid(), S)


def function_op_conv(f, S) -> np.ndarray:
    """``f * S`` with the Haar weight 1/L per phase-space point."""
    S = as_operator(S)
    L = S.shape[0]
    return shift_average(_grid(f, L) * (1.0 / L), S)


def op_op_conv(T, S) -> np.ndarray:
    """``(T * S)(z) = tr(T pi(z) S-check pi(z)^*)`` as an LxL grid.

    With ``R = S-check`` the trace splits over diagonals ``d = m - n`` into
    cyclic correlations ``G[d, k] = sum_m T[m-d, m] R[m-k, m-k-d]``, each
    evaluated by FFT, followed by a DFT over ``d``.
    """
    T = as_operator(T)
    S = as_operator(S, T.shape[0])
    L = T.shape[0]
    R = parity_conjugate(S)
    m = np.arange(L)
    d = m[:, None]
    a = T[(m[None, :] - d) % L, m[None, :]]
    b = R[m[None, :], (m[None, :] - d) % L]
    G = np.fft.ifft(np.fft.fft(a, axis=1) * (L * np.fft.ifft(b, axis=1)), axis=1)
    return G.T @ _phase_table(L)


def s_tilde(S) -> np.ndarray:
    """``S * S-check``, i.e. ``z -> tr(S pi(z) S pi(z)^*)``."""
    return op_op_conv(S, parity_conjugate(S))


def fourier_wigner(S) -> np.ndarray:
    """``F_W(S)(z) = tr(pi(z)^* S)``; the continuous half-phase is dropped."""
    S = as_operator(S)
    L = S.shape[0]
    m = np.arange(L)
    diagonals = S[m[None, :], (m[None, :] - m[:, None]) % L]
    return np.fft.fft(diagonals, axis=1)


def inverse_fourier_wigner(F) -> np.ndarray:
    """``S = (1/L) sum_z F(z) pi(z)``."""
    F = _grid(F)
    L = F.shape[0]
    D = np.fft.ifft(F, axis=1)
    m = np.arange(L)
    S = np.zeros((L, L), dtype=complex)
    S[m[None, :], (m[None, :] - m[:, None]) % L] = D
    return S


def symplectic_dft(g, *, kernel_sign: int = -1) -> np.ndarray:
    """Symplectic Fourier transform of a grid (Haar weight 1/L) or of a
    ``DiscreteMeasure`` (raw sum over atoms).

    ``kernel_sign`` exists for negative controls only; the frozen convention
    is ``exp(-2 pi i sigma(z, w) / L)``.
    """
    if isinstance(g, DiscreteMeasure):
        weights, scale = g.to_grid(), 1.0
    else:
        weights = _grid(g)
        scale = 1.0 / weights.shape[0]
    E = _phase_table(weights.shape[0])
    if kernel_sign < 0:
        out = (E.conj() @ weights @ E).T
    else:
        out = (E @ weights @ E.conj()).T
    return out * scale


def convolution_theorem_residual(mu: DiscreteMeasure, S, *, kernel_sign: int = -1) -> float:
    """``max |F_W(mu * S) - F_sigma(mu) F_W(S)|``."""
    lhs = fourier_wigner(measure_op_conv(mu, S))
    rhs = symplectic_dft(mu, kernel_sign=kernel_sign) * fourier_wigner(S)
    return float(np.max(np.abs(lhs - rhs)))
