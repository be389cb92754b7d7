"""Finite phase space Z_L x Z_L, its operator/measure types and the dense
spectral kernel.

Operators are plain ``(L, L)`` complex numpy arrays, signals are length-``L``
vectors and phase-space grids are ``(L, L)`` arrays indexed ``[k, l]`` with
``k`` the time shift and ``l`` the frequency shift.

Conventions (brute-forced at L = 4 in ``tests/test_core.py`` and then relied
upon everywhere):

* ``(pi(k, l) psi)[n] = exp(2 pi i l n / L) psi[(n - k) mod L]``
* ``pi(z) pi(w) = exp(-2 pi i l_w k_z / L) pi(z + w)``
* ``pi(z)^* = exp(-2 pi i k l / L) pi(-z)``
* ``pi(w) pi(z) pi(w)^* = exp(-2 pi i sigma(z, w) / L) pi(z)``
  with ``sigma(z, w) = l_z k_w - l_w k_z``
* ``sum_z pi(z) S pi(z)^* = L tr(S) I`` (so the Haar weight of a point is 1/L)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyRegion,
    InvalidExponent,
    NonDivisorLattice,
    NotHermitian,
    NotPositive,
    SingularFrame,
)

#: absolute tolerance for Hermiticity / positivity assertions
HERMITIAN_TOL = 1e-10
#: regularisation floor for inverse square roots
EPS_REG = 1e-10

#: frozen phase conventions, see module docstring
CONVENTIONS = {
    "cocycle": "pi(z)pi(w) = exp(-2*pi*i*l_w*k_z/L) pi(z+w)",
    "adjoint": "pi(z)^* = exp(-2*pi*i*k*l/L) pi(-z)",
    "covariance_sign": -1,
    "reconstruction_constant": "sum_z pi(z)S pi(z)^* = L tr(S) I",
    "moyal_constant": "sum_z |V_phi psi(z)|^2 = L |psi|^2 |phi|^2",
}


@dataclass(frozen=True)
class PhaseSpace:
    """Z_L x Z_L for signals of length ``L``."""

    L: int

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise ValueError(f"L must be a positive integer, got {self.L!r}")

    def point(self, k: int, l: int) -> PhasePoint:
        return PhasePoint(k % self.L, l % self.L)

    def points(self) -> list[PhasePoint]:
        return [PhasePoint(k, l) for k in range(self.L) for l in range(self.L)]

    def centered(self, k: int) -> int:
        """Representative of ``k`` in (-L/2, L/2]."""
        k %= self.L
        return k - self.L if k > self.L // 2 else k


@dataclass(frozen=True, order=True)
class PhasePoint:
    k: int
    l: int

    def __iter__(self):
        yield self.k
        yield self.l


def _L(space) -> int:
    return space.L if isinstance(space, PhaseSpace) else int(space)


def _kl(z, L: int) -> tuple[int, int]:
    k, l = z
    return int(k) % L, int(l) % L


def as_operator(A, L: int | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if L is not None and A.shape[0] != L:
        raise DimensionMismatch(f"expected a {L}x{L} operator, got {A.shape}")
    return A


def hermitian_residual(A) -> float:
    A = np.asarray(A)
    return float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_residual(A) <= tol


def is_positive(A, tol: float = HERMITIAN_TOL) -> bool:
    if not is_hermitian(A, tol):
        return False
    return float(np.linalg.eigvalsh(_hermitize(A))[0]) >= -tol


def require_positive(A, what: str = "operator") -> np.ndarray:
    A = as_operator(A)
    if not is_positive(A):
        raise NotPositive(f"{what} is not positive semidefinite")
    return A


def _hermitize(A):
    return 0.5 * (A + A.conj().T)


def rank_one(psi, phi=None) -> np.ndarray:
    """The operator ``psi (x) phi : f -> <f, phi> psi``."""
    psi = np.asarray(psi, dtype=complex)
    phi = psi if phi is None else np.asarray(phi, dtype=complex)
    return np.outer(psi, phi.conj())


# -- time-frequency shifts ---------------------------------------------------

@lru_cache(maxsize=32)
def _phase_table(L: int) -> np.ndarray:
    """``exp(2 pi i (a b mod L) / L)`` for a, b in Z_L (read-only)."""
    n = np.arange(L)
    table = np.exp(2j * np.pi * (np.outer(n, n) % L) / L)
    table.setflags(write=False)
    return table


def tf_shift(space, z) -> np.ndarray:
    """Matrix of the time-frequency shift ``pi(z) = M_l T_k``."""
    L = _L(space)
    k, l = _kl(z, L)
    n = np.arange(L)
    M = np.zeros((L, L), dtype=complex)
    M[n, (n - k) % L] = _phase_table(L)[l, n]
    return M


def adjoint_shift(space, z) -> np.ndarray:
    return tf_shift(space, z).conj().T


def parity_matrix(L: int) -> np.ndarray:
    P = np.zeros((L, L))
    n = np.arange(L)
    P[n, (-n) % L] = 1.0
    return P


def parity_conjugate(A) -> np.ndarray:
    """``P A P`` with ``(P psi)[n] = psi[-n]``; an exact index permutation."""
    A = as_operator(A)
    idx = (-np.arange(A.shape[0])) % A.shape[0]
    return A[np.ix_(idx, idx)]


def shift_conjugate(S, z) -> np.ndarray:
    """``pi(z) S pi(z)^*`` in O(L^2): entry ``[m, n]`` is
    ``exp(2 pi i l (m - n) / L) S[m - k, n - k]``."""
    S = as_operator(S)
    L = S.shape[0]
    k, l = _kl(z, L)
    n = np.arange(L)
    ph = _phase_table(L)[l, n]
    return np.roll(S, (k, k), axis=(0, 1)) * np.outer(ph, ph.conj())


def symplectic_form(z, w, space) -> int:
    """``sigma(z, w) = l_z k_w - l_w k_z`` reduced mod L."""
    L = _L(space)
    k, l = _kl(z, L)
    kw, lw = _kl(w, L)
    return (l * kw - lw * k) % L


# -- measures -----------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite weighted sum of point masses on Z_L x Z_L."""

    L: int
    atoms: Mapping[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        merged: dict[tuple[int, int], complex] = {}
        for (k, l), w in dict(self.atoms).items():
            key = (int(k) % self.L, int(l) % self.L)
            merged[key] = merged.get(key, 0) + complex(w)
        object.__setattr__(self, "atoms", dict(sorted(merged.items())))

    @classmethod
    def delta(cls, L: int, z=(0, 0), weight: complex = 1.0) -> DiscreteMeasure:
        return cls(L, {tuple(z): weight})

    @classmethod
    def from_grid(cls, grid) -> DiscreteMeasure:
        grid = np.asarray(grid)
        ks, ls = np.nonzero(grid)
        return cls(grid.shape[0], {(int(k), int(l)): grid[k, l] for k, l in zip(ks, ls)})

    @classmethod
    def uniform(cls, L: int, points: Iterable) -> DiscreteMeasure:
        pts = sorted({(int(k) % L, int(l) % L) for k, l in points})
        if not pts:
            raise EmptyRegion("uniform measure on an empty set")
        return cls(L, {p: 1.0 / len(pts) for p in pts})

    def to_grid(self) -> np.ndarray:
        grid = np.zeros((self.L, self.L), dtype=complex)
        for (k, l), w in self.atoms.items():
            grid[k, l] += w
        return grid

    @property
    def total_variation(self) -> float:
        return float(sum(abs(w) for w in self.atoms.values()))

    @property
    def total_mass(self) -> complex:
        return complex(sum(self.atoms.values()))

    @property
    def is_positive(self) -> bool:
        return all(w.imag == 0 and w.real >= 0 for w in self.atoms.values())

    def conj(self) -> DiscreteMeasure:
        return DiscreteMeasure(self.L, {z: w.conjugate() for z, w in self.atoms.items()})

    def scaled(self, c: complex) -> DiscreteMeasure:
        return DiscreteMeasure(self.L, {z: c * w for z, w in self.atoms.items()})

    def convolve(self, other: DiscreteMeasure) -> DiscreteMeasure:
        """Cyclic convolution on Z_L x Z_L."""
        if other.L != self.L:
            raise DimensionMismatch("measures live on different phase spaces")
        out: dict[tuple[int, int], complex] = {}
        for (k1, l1), w1 in self.atoms.items():
            for (k2, l2), w2 in other.atoms.items():
                key = ((k1 + k2) % self.L, (l1 + l2) % self.L)
                out[key] = out.get(key, 0) + w1 * w2
        return DiscreteMeasure(self.L, out)


def measure_check(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Reflection ``z -> -z`` of the atoms."""
    return DiscreteMeasure(mu.L, {(-k, -l): w for (k, l), w in mu.atoms.items()})


def convolve_grid(mu: DiscreteMeasure, f) -> np.ndarray:
    """``(mu * f)(z) = sum_y mu(y) f(z - y)`` on Z_L x Z_L."""
    f = np.asarray(f)
    out = np.zeros(f.shape, dtype=complex)
    for (k, l), w in mu.atoms.items():
        out += w * np.roll(f, (k, l), axis=(0, 1))
    return out


# -- lattices and regions -----------------------------------------------------

@dataclass(frozen=True)
class LatticeSpec:
    """The sublattice aZ_L x bZ_L of Z_L x Z_L."""

    L: int
    a: int
    b: int

    def __post_init__(self):
        for name, v in (("a", self.a), ("b", self.b)):
            if int(v) != v or v < 1 or self.L % v:
                raise NonDivisorLattice(f"{name}={v} does not divide L={self.L}")

    @property
    def size(self) -> int:
        return (self.L // self.a) * (self.L // self.b)

    def points(self) -> list[tuple[int, int]]:
        return [(k, l) for k in range(0, self.L, self.a) for l in range(0, self.L, self.b)]

    def indicator(self) -> np.ndarray:
        grid = np.zeros((self.L, self.L))
        grid[:: self.a, :: self.b] = 1.0
        return grid

    def contains(self, z) -> bool:
        k, l = _kl(z, self.L)
        return k % self.a == 0 and l % self.b == 0

    def measure(self, weight: complex = 1.0) -> DiscreteMeasure:
        return DiscreteMeasure(self.L, {p: weight for p in self.points()})


@dataclass(frozen=True)
class RegionSpec:
    """A phase-space subset: ``box`` (centred square), ``disc`` or ``explicit``.

    Radii are in grid units and measured on the centred representatives of
    Z_L, so they must stay below L/2. Disc boundaries are included.
    """

    kind: str
    radius: float | None = None
    points: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in ("box", "disc", "explicit"):
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.kind != "explicit" and (self.radius is None or self.radius < 0):
            raise ValueError(f"{self.kind} region needs a non-negative radius")
        object.__setattr__(self, "points", tuple(tuple(int(c) for c in p) for p in self.points))

    @classmethod
    def box(cls, radius) -> RegionSpec:
        return cls("box", radius)

    @classmethod
    def disc(cls, radius) -> RegionSpec:
        return cls("disc", radius)

    @classmethod
    def explicit(cls, points) -> RegionSpec:
        return cls("explicit", None, tuple(points))

    def mask(self, L: int) -> np.ndarray:
        """Boolean ``(L, L)`` membership grid."""
        if self.kind == "explicit":
            grid = np.zeros((L, L), dtype=bool)
            for k, l in self.points:
                grid[k % L, l % L] = True
            return grid
        if not self.radius < L / 2:
            raise ValueError(f"radius {self.radius} wraps around Z_{L}")
        c = np.arange(L)
        c = np.where(c > L // 2, c - L, c)
        if self.kind == "box":
            return (np.abs(c)[:, None] <= self.radius) & (np.abs(c)[None, :] <= self.radius)
        return c[:, None] ** 2 + c[None, :] ** 2 <= self.radius**2

    def lattice_points(self, lattice: LatticeSpec) -> list[tuple[int, int]]:
        m = self.mask(lattice.L) & (lattice.indicator() > 0)
        return [(int(k), int(l)) for k, l in zip(*np.nonzero(m))]


# -- spectral kernel ----------------------------------------------------------

@dataclass(frozen=True)
class SpectralData:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def hermitian_eig(A) -> SpectralData:
    A = as_operator(A)
    if hermitian_residual(A) > HERMITIAN_TOL:
        raise NotHermitian(f"max |A - A*| = {hermitian_residual(A):.3e}")
    w, V = np.linalg.eigh(_hermitize(A))
    return SpectralData(w, V)


def singular_values(A) -> np.ndarray:
    return np.linalg.svd(as_operator(A), compute_uv=False)


def schatten_norm(A, p: float = 1) -> float:
    if not p >= 1:
        raise InvalidExponent(f"Schatten exponent must be >= 1, got {p}")
    s = singular_values(A)
    if math.isinf(p):
        return float(s[0]) if s.size else 0.0
    if p == 1:
        return float(np.sum(s))
    return float(np.sum(s**p) ** (1.0 / p))


def trace_norm(A) -> float:
    return schatten_norm(A, 1)


@dataclass(frozen=True)
class ScalarMap:
    """A real function applied to spectra, with its declared domain.

    Eigenvalues up to ``slack`` outside ``[lo, hi]`` are clamped onto the
    domain; anything further out raises ``DomainError``.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    lo: float = -math.inf
    hi: float = math.inf
    slack: float = HERMITIAN_TOL

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.lo - self.slack) or np.any(t > self.hi + self.slack):
            raise DomainError(
                f"{self.name}: argument range [{t.min():.3e}, {t.max():.3e}] "
                f"outside [{self.lo}, {self.hi}]"
            )
        return self.func(np.clip(t, self.lo, self.hi))

    @classmethod
    def identity(cls) -> ScalarMap:
        return cls("identity", lambda t: t)

    @classmethod
    def power(cls, p: float) -> ScalarMap:
        if float(p).is_integer() and p >= 0:
            return cls(f"t^{int(p)}", lambda t: t ** int(p))
        return cls(f"t^{p}", lambda t: t**p, lo=0.0)

    @classmethod
    def exp(cls) -> ScalarMap:
        return cls("exp", np.exp)

    @classmethod
    def polynomial(cls, coefficients: Iterable[float]) -> ScalarMap:
        """Coefficients in increasing degree: ``c0 + c1 t + c2 t^2 + ...``."""
        coeffs = tuple(float(c) for c in coefficients)
        return cls(f"poly{coeffs}", lambda t: np.polynomial.polynomial.polyval(t, coeffs))

    @classmethod
    def plateau(cls, delta: float) -> ScalarMap:
        """``H(t) = -t`` on [0, 1 - delta], ``1 - t`` on (1 - delta, 1]."""
        return cls(
            f"H[{delta}]",
            lambda t: np.where(t > 1 - delta, 1.0 - t, -t),
            lo=0.0,
            hi=1.0,
        )

    @classmethod
    def parse(cls, tag: str) -> ScalarMap:
        """``"t^2"``, ``"power:1.5"``, ``"exp"``, ``"identity"``, ``"poly:1,0,2"``."""
        tag = tag.strip()
        if tag in ("identity", "id", "t"):
            return cls.identity()
        if tag == "exp":
            return cls.exp()
        if tag.startswith("t^"):
            return cls.power(float(tag[2:]))
        if tag.startswith("power:"):
            return cls.power(float(tag.split(":", 1)[1]))
        if tag.startswith("poly:"):
            return cls.polynomial(float(c) for c in tag.split(":", 1)[1].split(","))
        raise ValueError(f"unknown scalar map {tag!r}")


def matrix_function(A, phi: ScalarMap | Callable) -> np.ndarray:
    """Apply ``phi`` to the spectrum of a Hermitian matrix."""
    spec = hermitian_eig(A)
    values = phi(spec.eigenvalues)
    V = spec.eigenvectors
    return (V * values) @ V.conj().T


def inv_sqrt_psd(A) -> np.ndarray:
    spec = hermitian_eig(A)
    if spec.eigenvalues[0] <= EPS_REG:
        raise SingularFrame(f"smallest eigenvalue {spec.eigenvalues[0]:.3e} <= {EPS_REG}")
    V = spec.eigenvectors
    B = (V / np.sqrt(spec.eigenvalues)) @ V.conj().T
    return _hermitize(B)
