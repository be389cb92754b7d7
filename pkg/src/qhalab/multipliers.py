"""Gabor multipliers, localization operators, the eigenvalue plateau and
Berezin-Lieb inequalities."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .conv import function_op_conv, measure_op_conv, op_op_conv, s_tilde, shift_average
from .core import (
    HERMITIAN_TOL,
    DiscreteMeasure,
    LatticeSpec,
    RegionSpec,
    ScalarMap,
    as_operator,
    hermitian_eig,
    hermitian_residual,
    is_positive,
    matrix_function,
    parity_conjugate,
    require_positive,
)
from .errors import BadDelta, NonTilingBoxes, NotDensityOperator
from .frames import frame_bounds, frame_operator, lattice_measure

DENSITY_TOL = 1e-8
EIGEN_BRACKET_TOL = 1e-10


@dataclass(frozen=True)
class MaskSpec:
    """Phase-space mask: ``indicator`` of a region, a ``sampled`` grid, or a
    Gaussian ``bump`` exp(-pi (dk^2/wk^2 + dl^2/wl^2)) around ``center``
    (distances taken cyclically)."""

    kind: str
    region: RegionSpec | None = None
    grid: np.ndarray | None = None
    center: tuple[float, float] = (0.0, 0.0)
    widths: tuple[float, float] = (1.0, 1.0)

    @classmethod
    def indicator(cls, region: RegionSpec) -> MaskSpec:
        return cls("indicator", region=region)

    @classmethod
    def sampled(cls, grid) -> MaskSpec:
        return cls("sampled", grid=np.asarray(grid))

    @classmethod
    def bump(cls, center=(0.0, 0.0), widths=(1.0, 1.0)) -> MaskSpec:
        return cls("bump", center=tuple(center), widths=tuple(widths))

    def evaluate(self, L: int) -> np.ndarray:
        if self.kind == "indicator":
            return self.region.mask(L).astype(float)
        if self.kind == "sampled":
            if self.grid.shape != (L, L):
                raise ValueError(f"sampled mask has shape {self.grid.shape}, need ({L}, {L})")
            return self.grid
        if self.kind == "bump":
            n = np.arange(L)
            dk = (n - self.center[0] + L / 2) % L - L / 2
            dl = (n - self.center[1] + L / 2) % L - L / 2
            wk, wl = self.widths
            return np.exp(-np.pi * ((dk[:, None] / wk) ** 2 + (dl[None, :] / wl) ** 2))
        raise ValueError(f"unknown mask kind {self.kind!r}")


def _mask_grid(m, L: int) -> np.ndarray:
    return m.evaluate(L) if isinstance(m, MaskSpec) else np.asarray(m)


def discretize_mask(m, lattice: LatticeSpec) -> DiscreteMeasure:
    """Weights ``(a b / L) m(lambda)`` on the lattice points."""
    grid = _mask_grid(m, lattice.L)
    sub = np.zeros(grid.shape, dtype=complex)
    sub[:: lattice.a, :: lattice.b] = grid[:: lattice.a, :: lattice.b] * (lattice.a * lattice.b / lattice.L)
    return DiscreteMeasure.from_grid(sub)


def amalgam_norm(m, box_a: int, box_b: int) -> float:
    """``sum over box_a x box_b tiles of sup |m|``."""
    grid = np.abs(np.asarray(m))
    L = grid.shape[0]
    if box_a < 1 or box_b < 1 or L % box_a or grid.shape[1] % box_b:
        raise NonTilingBoxes(f"{box_a}x{box_b} boxes do not tile a {grid.shape} grid")
    tiles = grid.reshape(L // box_a, box_a, grid.shape[1] // box_b, box_b)
    return float(tiles.max(axis=(1, 3)).sum())


def amalgam_constant(lattice: LatticeSpec, box_a: int, box_b: int) -> float:
    """Smallest ``C`` with ``|mu^m_{a,b}|_M <= C |m|_{W(L^inf, l^1)}`` for every
    mask, by counting lattice points per tile."""
    L = lattice.L
    if L % box_a or L % box_b:
        raise NonTilingBoxes(f"{box_a}x{box_b} boxes do not tile Z_{L}")
    counts = lattice.indicator().reshape(L // box_a, box_a, L // box_b, box_b).sum(axis=(1, 3))
    return float(counts.max()) * lattice.a * lattice.b / L


def localization_operator(m, S) -> np.ndarray:
    S = as_operator(S)
    return function_op_conv(_mask_grid(m, S.shape[0]), S)


def mixed_multiplier_region(region: RegionSpec, lattice: LatticeSpec, S) -> np.ndarray:
    """``sum_{lambda in region, lattice} pi(lambda) S pi(lambda)^*`` (no lattice
    normalisation)."""
    S = as_operator(S, lattice.L)
    if not is_positive(S):
        warnings.warn("mixed-state multiplier built from a non-positive operator", stacklevel=2)
    weights = (region.mask(lattice.L) & (lattice.indicator() > 0)).astype(float)
    G = shift_average(weights, S)
    if hermitian_residual(S) <= HERMITIAN_TOL:
        G = 0.5 * (G + G.conj().T)
    return G


def gabor_multiplier(m, lattice: LatticeSpec, S) -> np.ndarray:
    """Lattice-normalised multiplier ``mu^m_{a,b} * S``."""
    return measure_op_conv(discretize_mask(m, lattice), S)


@dataclass(frozen=True)
class PlateauReport:
    L: int
    a: int
    b: int
    R: float | None
    delta: float
    count_above: int
    target: float
    ratio: float
    lemma_lhs: float
    lemma_bound: float
    eigenvalues: np.ndarray
    square_trace_residual: float
    h_trace_residual: float

    CSV_COLUMNS = ("L", "a", "b", "R", "delta", "count_above", "target", "ratio", "lemma_lhs", "lemma_bound")

    @property
    def lemma_slack(self) -> float:
        return self.lemma_bound - self.lemma_lhs

    def row(self) -> tuple:
        return tuple(getattr(self, c) for c in self.CSV_COLUMNS)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = [float(x) for x in self.eigenvalues]
        return d


def require_density_operator(S, lattice: LatticeSpec) -> np.ndarray:
    S = as_operator(S, lattice.L)
    if not is_positive(S):
        raise NotDensityOperator("density operators must be positive")
    F = frame_operator(parity_conjugate(S), lattice, check=False)
    dev = float(np.max(np.abs(F - np.eye(lattice.L))))
    if dev > DENSITY_TOL:
        raise NotDensityOperator(f"frame operator deviates from identity by {dev:.3e}")
    return S


def double_lattice_sum(values, points, L: int) -> complex:
    """``sum_{lambda, lambda'} values(lambda' - lambda)`` over a point set,
    via the cyclic autocorrelation of its indicator (exact integer counts)."""
    ind = np.zeros((L, L))
    for k, l in points:
        ind[k, l] = 1.0
    f = np.fft.fft2(ind)
    counts = np.rint(np.fft.ifft2(np.abs(f) ** 2).real)
    return complex(np.sum(counts * values))


def plateau_analysis(region: RegionSpec, lattice: LatticeSpec, S, delta: float) -> PlateauReport:
    if not 0 < delta < 1:
        raise BadDelta(f"delta must lie in (0, 1), got {delta}")
    S = require_density_operator(S, lattice)
    L = lattice.L
    points = region.lattice_points(lattice)
    G = mixed_multiplier_region(region, lattice, S)
    ev = hermitian_eig(G).eigenvalues
    trS = float(np.trace(S).real)
    target = len(points) * trS
    count = int(np.sum(ev > 1 - delta))
    double_sum = double_lattice_sum(s_tilde(S).real, points, L).real
    sq_spectral = float(np.sum(ev**2))
    sq_resid = abs(sq_spectral - double_sum) / max(1.0, abs(double_sum))
    h_trace = float(np.sum(ScalarMap.plateau(delta)(ev)))
    bound = max(1 / delta, 1 / (1 - delta)) * abs(double_sum - target)
    return PlateauReport(
        L=L,
        a=lattice.a,
        b=lattice.b,
        R=region.radius,
        delta=delta,
        count_above=count,
        target=target,
        ratio=count / target if target else math.nan,
        lemma_lhs=abs(count - target),
        lemma_bound=bound,
        eigenvalues=ev,
        square_trace_residual=sq_resid,
        h_trace_residual=abs(h_trace - (count - target)),
    )


def berezin_lieb_lower(T, S, lattice: LatticeSpec, phi: ScalarMap) -> tuple[float, float, float]:
    """``sum_lambda phi(T * S-check (lambda))`` against ``B tr(phi(T))``."""
    T = require_positive(as_operator(T, lattice.L), "T")
    B = frame_bounds(S, lattice).upper
    samples = op_op_conv(T, parity_conjugate(S))[:: lattice.a, :: lattice.b].real
    lhs = float(np.sum(phi(samples)))
    rhs = B * float(np.trace(matrix_function(T, phi)).real)
    return lhs, rhs, rhs - lhs


def berezin_lieb_upper(c, S, lattice: LatticeSpec, phi: ScalarMap) -> tuple[float, float, float]:
    """``tr(phi(mu_c * S))`` against ``sum_lambda phi(B c(lambda))``; lattice
    points absent from ``c`` carry weight zero."""
    mu = lattice_measure(lattice, c)
    B = frame_bounds(S, lattice).upper
    lhs = float(np.trace(matrix_function(measure_op_conv(mu, S), phi)).real)
    weights = np.zeros(lattice.size)
    index = {p: i for i, p in enumerate(lattice.points())}
    for z, w in mu.atoms.items():
        weights[index[z]] = w.real
    rhs = float(np.sum(phi(B * weights)))
    return lhs, rhs, rhs - lhs
