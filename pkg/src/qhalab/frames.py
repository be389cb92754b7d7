"""Mixed-state Gabor frames: frame operators, bounds, tightening and
data-operator augmentation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .conv import measure_op_conv, shift_average
from .core import (
    DiscreteMeasure,
    LatticeSpec,
    RegionSpec,
    _hermitize,
    as_operator,
    hermitian_eig,
    inv_sqrt_psd,
    measure_check,
    parity_conjugate,
    rank_one,
    require_positive,
    shift_conjugate,
)
from .errors import EmptyRegion, LengthMismatch, NegativeWeight, NotAFrame, SingularFrame

TIGHT_TOL = 1e-8
NOT_A_FRAME_TOL = 1e-12
PARITY_SPECTRUM_TOL = 1e-10


@dataclass(frozen=True)
class FrameReport:
    lower: float
    upper: float

    @property
    def ratio(self) -> float:
        return self.upper / self.lower

    @property
    def is_tight(self) -> bool:
        return self.ratio - 1 < TIGHT_TOL

    @property
    def frame_constant(self) -> float | None:
        return 0.5 * (self.lower + self.upper) if self.is_tight else None

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "ratio": self.ratio,
            "is_tight": self.is_tight,
            "frame_constant": self.frame_constant,
        }


def frame_operator(S, lattice: LatticeSpec, *, check: bool = True) -> np.ndarray:
    """``sum_{lambda in Lambda} pi(lambda) S pi(lambda)^*``."""
    S = as_operator(S, lattice.L)
    if check:
        require_positive(S, "frame window")
    return _hermitize(shift_average(lattice.indicator(), S))


def lattice_commutator(F, lattice: LatticeSpec) -> float:
    """``max_lambda max |F pi(lambda) - pi(lambda) F|``, via ``pi F pi^* - F``."""
    return max(float(np.max(np.abs(shift_conjugate(F, z) - F))) for z in lattice.points())


def frame_bounds(S, lattice: LatticeSpec) -> FrameReport:
    """Extreme eigenvalues of the frame operator.

    The frame condition sums ``Q_S`` while reconstruction sums ``S``; the two
    frame operators are parity conjugates of each other, which is checked
    here rather than assumed.
    """
    S = require_positive(as_operator(S, lattice.L), "frame window")
    ev = hermitian_eig(frame_operator(S, lattice, check=False)).eigenvalues
    ev_check = hermitian_eig(frame_operator(parity_conjugate(S), lattice, check=False)).eigenvalues
    scale = max(1.0, float(abs(ev[-1])))
    if np.max(np.abs(ev - ev_check)) > PARITY_SPECTRUM_TOL * scale:
        raise AssertionError("frame operators of S and its parity conjugate have different spectra")
    lower, upper = float(ev[0]), float(ev[-1])
    if lower <= NOT_A_FRAME_TOL:
        raise NotAFrame(f"lower frame bound {lower:.3e} is not positive")
    return FrameReport(lower, upper)


def tighten(S, lattice: LatticeSpec) -> np.ndarray:
    """Canonical density operator ``F^{-1/2} S F^{-1/2}`` for ``F`` the frame
    operator of ``(S, lattice)``."""
    F = frame_operator(S, lattice)
    B = inv_sqrt_psd(F)
    # F commutes with lattice shifts, so B does too and (B S B, lattice) is tight
    if lattice_commutator(F, lattice) > 1e-10 * max(1.0, float(np.max(np.abs(F)))):
        raise SingularFrame("frame operator does not commute with the lattice shifts")
    S_tight = _hermitize(B @ as_operator(S) @ B)
    residual = np.max(np.abs(frame_operator(S_tight, lattice, check=False) - np.eye(lattice.L)))
    if residual > 1e-8:
        raise SingularFrame(f"tightening failed, frame operator off identity by {residual:.3e}")
    return S_tight


def mixed_state_from_windows(weights: Sequence[float], windows: Sequence) -> np.ndarray:
    """``sum_n s_n phi_n (x) phi_n``."""
    if len(weights) != len(windows):
        raise LengthMismatch(f"{len(weights)} weights for {len(windows)} windows")
    if any(w < 0 for w in weights):
        raise NegativeWeight("mixed-state weights must be non-negative")
    if not windows:
        raise LengthMismatch("need at least one window")
    lengths = {len(w) for w in windows}
    if len(lengths) != 1:
        raise LengthMismatch(f"windows have different lengths {sorted(lengths)}")
    return sum(float(s) * rank_one(w) for s, w in zip(weights, windows))


def augment_data_operator(S_D, region: RegionSpec) -> np.ndarray:
    """Average of ``pi(w) S_D pi(w)^*`` over the grid points of ``region``."""
    S_D = as_operator(S_D)
    L = S_D.shape[0]
    pts = [(int(k), int(l)) for k, l in zip(*np.nonzero(region.mask(L)))]
    if not pts:
        raise EmptyRegion("augmentation region contains no grid points")
    return measure_op_conv(DiscreteMeasure.uniform(L, pts), S_D)


def lattice_measure(lattice: LatticeSpec, c) -> DiscreteMeasure:
    """``mu_c = sum c(lambda) delta_lambda`` from a mapping or a DiscreteMeasure."""
    atoms = c.atoms if isinstance(c, DiscreteMeasure) else dict(c)
    for z, w in atoms.items():
        if not lattice.contains(z):
            raise ValueError(f"{z} is not a point of the lattice")
        if complex(w).imag != 0 or complex(w).real < 0:
            raise NegativeWeight(f"weight {w} at {z} is not non-negative")
    return DiscreteMeasure(lattice.L, atoms)


def frame_transform_under_convolution(S, lattice: LatticeSpec, c: Mapping | DiscreteMeasure) -> FrameReport:
    """Frame bounds of ``(mu_c-check * S, lattice)``; they equal the bounds of
    ``(S, lattice)`` times ``sum c``."""
    mu = lattice_measure(lattice, c)
    return frame_bounds(measure_op_conv(measure_check(mu), S), lattice)
