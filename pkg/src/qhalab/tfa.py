"""Short-time Fourier transform, spectrogram and Cohen's class on Z_L x Z_L."""

from __future__ import annotations

import numpy as np

from .core import as_operator, parity_conjugate, rank_one
from .errors import DimensionMismatch, LengthMismatch


def as_signal(x, L: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1:
        raise LengthMismatch(f"signals are 1-d, got shape {x.shape}")
    if L is not None and x.shape[0] != L:
        raise LengthMismatch(f"expected length {L}, got {x.shape[0]}")
    return x


def _pair(psi, phi):
    psi = as_signal(psi)
    phi = as_signal(phi)
    if psi.shape != phi.shape:
        raise LengthMismatch(f"signal lengths differ: {psi.shape[0]} vs {phi.shape[0]}")
    return psi, phi


def stft(psi, phi) -> np.ndarray:
    """``V_phi psi(k, l) = <psi, pi(k, l) phi>``.

    Each time column is the FFT of ``psi[n] * conj(phi[n - k])``, giving
    O(L^2 log L) overall.
    """
    psi, phi = _pair(psi, phi)
    L = psi.shape[0]
    n = np.arange(L)
    windowed = psi[None, :] * phi[(n[None, :] - n[:, None]) % L].conj()
    return np.fft.fft(windowed, axis=1)


def spectrogram(psi, phi) -> np.ndarray:
    V = stft(psi, phi)
    return V.real**2 + V.imag**2


def cohen_q_cross(S, psi, phi) -> np.ndarray:
    """``Q_S(psi, phi)(z) = ((psi (x) phi) * S-check)(z) = <S pi(z)^* psi, pi(z)^* phi>``."""
    psi, phi = _pair(psi, phi)
    S = as_operator(S)
    if S.shape[0] != psi.shape[0]:
        raise DimensionMismatch(f"operator is {S.shape}, signals have length {psi.shape[0]}")
    from .conv import op_op_conv

    return op_op_conv(rank_one(psi, phi), parity_conjugate(S))


def cohen_q(S, psi) -> np.ndarray:
    """Quadratic Cohen's class distribution; real when ``S`` is Hermitian."""
    Q = cohen_q_cross(S, psi, psi)
    S = np.asarray(S)
    if np.allclose(S, S.conj().T, atol=1e-12, rtol=0):
        return Q.real
    return Q
