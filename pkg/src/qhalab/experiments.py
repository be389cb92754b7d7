"""Desk-scale reproductions: eigenvalue plateau, multiplier convergence,
mask/window continuity, Berezin-Lieb checks and the invariant suite."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__, qhaop, sampling
from .conv import (
    convolution_theorem_residual,
    fourier_wigner,
    function_op_conv,
    inverse_fourier_wigner,
    measure_op_conv,
    op_op_conv,
    shift_average,
    symplectic_dft,
)
from .core import (
    LatticeSpec,
    RegionSpec,
    ScalarMap,
    convolve_grid,
    hermitian_eig,
    measure_check,
    parity_conjugate,
    rank_one,
    schatten_norm,
    trace_norm,
)
from .errors import ConfigError, FourierWignerZero, NonDivisorLattice
from .frames import frame_operator, mixed_state_from_windows, tighten
from .multipliers import (
    MaskSpec,
    PlateauReport,
    berezin_lieb_lower,
    berezin_lieb_upper,
    discretize_mask,
    gabor_multiplier,
    localization_operator,
    plateau_analysis,
)
from .tfa import cohen_q, cohen_q_cross, stft
from .windows import hermite_window, periodized_gaussian, random_window

EXPERIMENTS = ("plateau", "converge", "continuity", "berezin-lieb", "props")

DEFAULTS: dict[str, dict[str, Any]] = {
    "plateau": {
        "L": 96,
        "lattice": [2, 2],
        "region": {"kind": "box"},
        "radii": [6, 12, 18, 24, 30, 36, 42],
        "delta": 0.3,
        "ratio_window": [0.8, 1.2],
    },
    "converge": {
        "L": 64,
        "lattices": [[16, 16], [8, 8], [4, 4], [2, 2], [1, 1]],
        "mask": {"kind": "bump", "center": [0, 0], "widths": [8, 8]},
    },
    "continuity": {
        "L": 32,
        "lattice": [2, 2],
        "mask": {"kind": "bump", "center": [0, 0], "widths": [4, 4]},
        "levels": 10,
    },
    "berezin-lieb": {
        "L": 16,
        "lattice": [2, 2],
        "phis": ["t^2", "t^3", "exp"],
        "repeats": 20,
        "frame": "tight",
    },
    "props": {"L": 16, "lattice": [2, 2], "repeats": 50},
}


@dataclass
class ExperimentConfig:
    """Every experiment reads the subset of fields it needs; unset fields fall
    back to ``DEFAULTS[experiment]``."""

    experiment: str
    L: int = 16
    lattice: tuple[int, int] = (2, 2)
    lattices: list[tuple[int, int]] = field(default_factory=list)
    window: Any = field(default_factory=lambda: {"kind": "gaussian"})
    weights: list[float] = field(default_factory=list)
    region: dict = field(default_factory=lambda: {"kind": "box"})
    radii: list[float] = field(default_factory=list)
    delta: float = 0.3
    ratio_window: tuple[float, float] = (0.8, 1.2)
    mask: dict = field(default_factory=lambda: {"kind": "bump", "widths": [4, 4]})
    levels: int = 10
    eps: list[float] | None = None
    phis: list[str] = field(default_factory=lambda: ["t^2", "t^3", "exp"])
    frame: str = "tight"
    repeats: int = 0
    seed: int = 0
    out: str | None = None
    format: str = "csv"

    @classmethod
    def from_mapping(cls, data: dict, experiment: str | None = None) -> ExperimentConfig:
        data = dict(data)
        experiment = experiment or data.get("experiment")
        if experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {experiment!r}; expected one of {EXPERIMENTS}")
        merged = {**DEFAULTS[experiment], **data, "experiment": experiment}
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(merged) - known)
        if unknown:
            raise ConfigError(f"unknown config keys {unknown}")
        try:
            cfg = cls(**merged)
            cfg.L = int(cfg.L)
            cfg.lattice = tuple(int(v) for v in cfg.lattice)
            cfg.lattices = [tuple(int(v) for v in p) for p in cfg.lattices]
            cfg.ratio_window = tuple(float(v) for v in cfg.ratio_window)
            cfg.seed = int(cfg.seed)
            cfg.repeats = int(cfg.repeats)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path, experiment: str | None = None) -> ExperimentConfig:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            if path.suffix == ".toml":
                import tomli

                data = tomli.loads(text)
            else:
                data = json.loads(text)
        except Exception as exc:  # both parsers raise their own error types
            raise ConfigError(f"cannot parse config {path}: {exc}") from exc
        return cls.from_mapping(data, experiment)

    def validate(self) -> None:
        if self.L < 1:
            raise ConfigError("L must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        pairs = [self.lattice, *self.lattices]
        for a, b in pairs:
            if a < 1 or b < 1 or self.L % a or self.L % b:
                raise ConfigError(f"lattice ({a}, {b}) does not divide L={self.L}")
        if self.experiment == "plateau":
            if not 0 < self.delta < 1:
                raise ConfigError("delta must lie in (0, 1)")
            if any(r >= self.L / 2 for r in self.radii):
                raise ConfigError("plateau radii must stay below L/2")
        if self.experiment == "converge" and (not self.lattices or self.lattices[-1] != (1, 1)):
            raise ConfigError("converge lattices must end at (1, 1)")
        if self.repeats < 0:
            raise ConfigError("repeats must be non-negative")

    def echo(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = [list(p) for p in v] if f.name == "lattices" else (list(v) if isinstance(v, tuple) else v)
        return out


@dataclass
class ResultTable:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()

    def payload(self) -> dict:
        """JSON content without the wall-time entry."""
        meta = {k: v for k, v in self.metadata.items() if k != "wall_time"}
        return {
            "name": self.name,
            "columns": list(self.columns),
            "rows": [[_jsonable(v) for v in r] for r in self.rows],
            "failures": list(self.failures),
            "metadata": meta,
        }

    def to_json(self) -> str:
        doc = self.payload()
        if "wall_time" in self.metadata:
            doc["metadata"]["wall_time"] = self.metadata["wall_time"]
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def render(self, fmt: str = "csv") -> str:
        return self.to_json() if fmt == "json" else self.to_csv()

    def write(self, path, fmt: str = "csv") -> None:
        Path(path).write_text(self.render(fmt))


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer, np.bool_)):
        return repr(v.item())
    return v


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- windows and masks from config --------------------------------------------

def build_window(spec, L: int) -> np.ndarray:
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind", "gaussian")
    if kind == "gaussian":
        return periodized_gaussian(L, spec.get("width", 1.0), spec.get("center", 0.0), spec.get("freq", 0.0))
    if kind == "hermite":
        return hermite_window(L, int(spec.get("order", 0)), spec.get("width", 1.0))
    if kind == "random":
        return random_window(L, int(spec.get("seed", 0)))
    if kind == "explicit":
        found, value = qhaop.load(spec["file"])
        if found != "signal" or value.shape != (L,):
            raise ConfigError(f"{spec['file']} does not hold a length-{L} signal")
        return value / np.linalg.norm(value)
    raise ConfigError(f"unknown window kind {kind!r}")


def build_state(cfg: ExperimentConfig) -> np.ndarray:
    """``phi (x) phi`` for one window, or a weighted mixed state for a list."""
    specs = cfg.window if isinstance(cfg.window, list) else [cfg.window]
    windows = [build_window(s, cfg.L) for s in specs]
    weights = cfg.weights or [1.0 / len(windows)] * len(windows)
    if len(windows) == 1 and not cfg.weights:
        return rank_one(windows[0])
    return mixed_state_from_windows(weights, windows)


def build_region(spec: dict, radius=None) -> RegionSpec:
    kind = spec.get("kind", "box")
    if kind == "explicit":
        return RegionSpec.explicit(spec["points"])
    r = spec.get("radius") if radius is None else radius
    if r is None:
        raise ConfigError(f"region {spec} needs a radius")
    return RegionSpec(kind, float(r))


def build_mask(spec: dict, L: int) -> MaskSpec:
    kind = spec.get("kind", "bump")
    if kind == "bump":
        return MaskSpec.bump(spec.get("center", (0, 0)), spec.get("widths", (4, 4)))
    if kind == "indicator":
        return MaskSpec.indicator(build_region(spec.get("region", {"kind": "box", "radius": 4})))
    if kind == "sampled":
        found, grid = qhaop.load(spec["file"])
        if found != "grid" or grid.shape != (L, L):
            raise ConfigError(f"{spec['file']} does not hold an {L}x{L} grid")
        return MaskSpec.sampled(grid)
    raise ConfigError(f"unknown mask kind {kind!r}")


def _finish(table: ResultTable, cfg: ExperimentConfig, started: float) -> ResultTable:
    table.metadata.update(config=cfg.echo(), version=__version__, wall_time=time.perf_counter() - started)
    return table


# -- runners -----------------------------------------------------------------

def run_plateau(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    started = time.perf_counter()
    lattice = LatticeSpec(cfg.L, *cfg.lattice)
    S = tighten(build_state(cfg), lattice)

    def one(R) -> PlateauReport:
        return plateau_analysis(build_region(cfg.region, R), lattice, S, cfg.delta)

    reports = _map(one, list(cfg.radii), threads)
    table = ResultTable("plateau", PlateauReport.CSV_COLUMNS, [r.row() for r in reports])
    for r in reports:
        if r.lemma_lhs > r.lemma_bound + 1e-8:
            table.failures.append(f"R={r.R}: H-estimate violated ({r.lemma_lhs} > {r.lemma_bound})")
        if r.eigenvalues.min() < -1e-10 or r.eigenvalues.max() > 1 + 1e-10:
            table.failures.append(f"R={r.R}: eigenvalue outside [0, 1]")
        if r.square_trace_residual > 1e-8:
            table.failures.append(f"R={r.R}: square-trace identity off by {r.square_trace_residual:.3e}")
        if r.h_trace_residual > 1e-8:
            table.failures.append(f"R={r.R}: tr H(G) != count - target")
    if reports and cfg.ratio_window:
        lo, hi = cfg.ratio_window
        final = reports[-1].ratio
        if not lo <= final <= hi:
            table.failures.append(f"final ratio {final:.4f} outside [{lo}, {hi}]")
    table.metadata["ratio_window"] = list(cfg.ratio_window)
    return _finish(table, cfg, started)


def run_convergence(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    started = time.perf_counter()
    S = build_state(cfg)
    mask = build_mask(cfg.mask, cfg.L)
    reference = localization_operator(mask, S)

    def one(pair):
        try:
            lattice = LatticeSpec(cfg.L, *pair)
        except NonDivisorLattice as exc:
            raise ConfigError(str(exc)) from exc
        return trace_norm(gabor_multiplier(mask, lattice, S) - reference)

    errors = _map(one, list(cfg.lattices), threads)
    table = ResultTable("converge", ("a", "b", "error"), [(a, b, e) for (a, b), e in zip(cfg.lattices, errors)])
    if errors and errors[-1] >= 1e-10:
        table.failures.append(f"error at (1, 1) is {errors[-1]:.3e}, expected < 1e-10")
    if len(errors) >= 3 and not errors[-2] < errors[0]:
        table.failures.append("finest proper sublattice is not more accurate than the coarsest")
    return _finish(table, cfg, started)


def continuity_directions(cfg: ExperimentConfig) -> tuple[np.ndarray, np.ndarray]:
    """Seeded window direction (Hermitian, unit trace norm) and mask direction
    (real, unit sup norm)."""
    rng = np.random.default_rng([cfg.seed, 1])
    delta = sampling.hermitian(rng, cfg.L)
    delta /= trace_norm(delta)
    rho = rng.standard_normal((cfg.L, cfg.L))
    rho /= np.max(np.abs(rho))
    return delta, rho


def run_continuity(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    started = time.perf_counter()
    lattice = LatticeSpec(cfg.L, *cfg.lattice)
    S = build_state(cfg)
    m = build_mask(cfg.mask, cfg.L).evaluate(cfg.L)
    delta, rho = continuity_directions(cfg)
    schedule = cfg.eps if cfg.eps is not None else [2.0**-n for n in range(cfg.levels + 1)]
    mu = discretize_mask(m, lattice)
    G = gabor_multiplier(m, lattice, S)
    S_norm = trace_norm(S)

    def one(eps):
        S_n = S + eps * delta
        m_n = m + eps * rho
        window_error = trace_norm(gabor_multiplier(m, lattice, S_n) - G)
        bound_w = mu.total_variation * trace_norm(S_n - S)
        mask_error = trace_norm(gabor_multiplier(m_n, lattice, S) - G)
        bound_m = discretize_mask(m_n - m, lattice).total_variation * S_norm
        return (eps, window_error, bound_w, mask_error, bound_m)

    rows = _map(one, list(schedule), threads)
    table = ResultTable("continuity", ("eps", "window_error", "bound_w", "mask_error", "bound_m"), rows)
    for eps, we, bw, me, bm in rows:
        if we > bw + 1e-10:
            table.failures.append(f"eps={eps}: window error {we} exceeds bound {bw}")
        if me > bm + 1e-10:
            table.failures.append(f"eps={eps}: mask error {me} exceeds bound {bm}")
    for col in (1, 3):
        ordered = [r[col] for r in sorted(rows, key=lambda r: -r[0]) if r[0] > 0]
        if any(b >= a for a, b in zip(ordered, ordered[1:])):
            table.failures.append(f"{table.columns[col]} does not decrease with eps")
    return _finish(table, cfg, started)


def berezin_lieb_state(cfg: ExperimentConfig, lattice: LatticeSpec) -> np.ndarray:
    """Unit-trace positive window; ``frame="tight"`` makes it a tight frame
    with constant ``|lattice| / L``."""
    S = build_state(cfg)
    if cfg.frame == "tight":
        S = tighten(S, lattice)
    elif cfg.frame != "raw":
        raise ConfigError(f"frame must be 'tight' or 'raw', got {cfg.frame!r}")
    return S / np.trace(S).real


def run_berezin_lieb(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    started = time.perf_counter()
    lattice = LatticeSpec(cfg.L, *cfg.lattice)
    S = berezin_lieb_state(cfg, lattice)
    try:
        phis = [ScalarMap.parse(p) for p in cfg.phis]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    points = lattice.points()

    def one(i):
        rng = np.random.default_rng([cfg.seed, 2, i])
        T = sampling.positive(rng, cfg.L, trace=1.0)
        c = dict(zip(points, rng.random(len(points))))
        out = []
        for tag, phi in zip(cfg.phis, phis):
            out.append((tag, "lower", i, *berezin_lieb_lower(T, S, lattice, phi)))
            out.append((tag, "upper", i, *berezin_lieb_upper(c, S, lattice, phi)))
        return out

    rows = [r for chunk in _map(one, list(range(cfg.repeats)), threads) for r in chunk]
    table = ResultTable("berezin-lieb", ("phi", "direction", "instance", "lhs", "rhs", "slack"), rows)
    for phi, direction, i, lhs, rhs, slack in rows:
        if slack < -1e-10:
            table.failures.append(f"{phi} {direction} #{i}: slack {slack:.3e}")
    return _finish(table, cfg, started)


# -- invariant suite -----------------------------------------------------------

@dataclass(frozen=True)
class Invariant:
    name: str
    tolerance: float
    check: Callable[[np.random.Generator, int, LatticeSpec], float]


def _rel(x, scale) -> float:
    return float(x) / max(1.0, float(scale))


def _maxabs(A) -> float:
    return float(np.max(np.abs(A)))


def _moyal(rng, L, lattice):
    p1, p2, f1, f2 = (sampling.signal(rng, L) for _ in range(4))
    lhs = np.sum(stft(p1, f1) * stft(p2, f2).conj()) / L
    rhs = np.vdot(p2, p1) * np.vdot(f2, f1).conj()
    scale = np.prod([np.linalg.norm(v) for v in (p1, p2, f1, f2)])
    return _rel(abs(lhs - rhs), scale)


def _one_star(rng, L, lattice):
    S = sampling.operator(rng, L)
    return _rel(_maxabs(function_op_conv(np.ones((L, L)), S) - np.trace(S) * np.eye(L)), abs(np.trace(S)))


def _trace_mu(rng, L, lattice):
    mu, S = sampling.measure(rng, L), sampling.operator(rng, L)
    lhs = np.trace(measure_op_conv(mu, S))
    return _rel(abs(lhs - mu.total_mass * np.trace(S)), mu.total_variation * trace_norm(S))


def _adjoint(rng, L, lattice):
    mu, S = sampling.measure(rng, L), sampling.operator(rng, L)
    lhs = measure_op_conv(mu, S).conj().T
    return _rel(_maxabs(lhs - measure_op_conv(mu.conj(), S.conj().T)), mu.total_variation * _maxabs(S))


def _parity(rng, L, lattice):
    mu, S = sampling.measure(rng, L), sampling.operator(rng, L)
    lhs = parity_conjugate(measure_op_conv(mu, S))
    rhs = measure_op_conv(measure_check(mu), parity_conjugate(S))
    return _rel(_maxabs(lhs - rhs), mu.total_variation * _maxabs(S))


def _assoc_a(rng, L, lattice):
    mu, S, T = sampling.measure(rng, L), sampling.operator(rng, L), sampling.operator(rng, L)
    lhs = op_op_conv(measure_op_conv(mu, S), T)
    rhs = convolve_grid(mu, op_op_conv(S, T))
    return _rel(_maxabs(lhs - rhs), mu.total_variation * trace_norm(S) * trace_norm(T))


def _assoc_b(rng, L, lattice):
    mu, nu, S = sampling.measure(rng, L), sampling.measure(rng, L), sampling.operator(rng, L)
    lhs = measure_op_conv(mu.convolve(nu), S)
    rhs = measure_op_conv(mu, measure_op_conv(nu, S))
    return _rel(_maxabs(lhs - rhs), mu.total_variation * nu.total_variation * _maxabs(S))


def _positivity(rng, L, lattice):
    mu, S = sampling.measure(rng, L, positive=True), sampling.positive(rng, L)
    return max(0.0, -float(hermitian_eig(measure_op_conv(mu, S)).eigenvalues[0]))


def _schatten(p):
    def check(rng, L, lattice):
        mu, S = sampling.measure(rng, L), sampling.operator(rng, L)
        bound = mu.total_variation * schatten_norm(S, p)
        return max(0.0, schatten_norm(measure_op_conv(mu, S), p) - bound) / bound

    return check


def _conv_theorem(kernel_sign):
    def check(rng, L, lattice):
        mu, S = sampling.measure(rng, L), sampling.operator(rng, L)
        return _rel(convolution_theorem_residual(mu, S, kernel_sign=kernel_sign), mu.total_variation * _maxabs(S))

    return check


def _commutativity(rng, L, lattice):
    S, T = sampling.operator(rng, L), sampling.operator(rng, L)
    return _rel(_maxabs(op_op_conv(T, S) - op_op_conv(S, T)), trace_norm(S) * trace_norm(T))


def _fw_roundtrip(rng, L, lattice):
    S = sampling.operator(rng, L)
    return _rel(_maxabs(inverse_fourier_wigner(fourier_wigner(S)) - S), _maxabs(S))


def _fsigma_involution(rng, L, lattice):
    g = sampling.operator(rng, L)
    return _rel(_maxabs(symplectic_dft(symplectic_dft(g)) - g), _maxabs(g))


def _density(rng, L, lattice):
    return tighten(sampling.positive(rng, L, rank=3), lattice)


def _random_box(rng, L):
    return RegionSpec.box(int(rng.integers(0, max(1, (L - 1) // 2))))


def _square_trace(rng, L, lattice):
    from .multipliers import double_lattice_sum, mixed_multiplier_region
    from .conv import s_tilde

    S = _density(rng, L, lattice)
    region = _random_box(rng, L)
    G = mixed_multiplier_region(region, lattice, S)
    spectral = float(np.sum(hermitian_eig(G).eigenvalues ** 2))
    double = double_lattice_sum(s_tilde(S).real, region.lattice_points(lattice), L).real
    return abs(spectral - double) / max(1.0, abs(double))


def _lidskii(rng, L, lattice):
    from .multipliers import mixed_multiplier_region

    S = _density(rng, L, lattice)
    region = _random_box(rng, L)
    ev = hermitian_eig(mixed_multiplier_region(region, lattice, S)).eigenvalues
    target = len(region.lattice_points(lattice)) * np.trace(S).real
    return abs(ev.sum() - target) / max(1.0, target)


def _h_estimate(rng, L, lattice):
    S = _density(rng, L, lattice)
    delta = float(rng.choice([0.1, 0.3, 0.5, 0.7]))
    r = plateau_analysis(_random_box(rng, L), lattice, S, delta)
    return max(0.0, r.lemma_lhs - r.lemma_bound)


def _polarization(rng, L, lattice):
    S, psi, phi = sampling.operator(rng, L), sampling.signal(rng, L), sampling.signal(rng, L)
    Q = lambda x: cohen_q_cross(S, x, x)  # noqa: E731
    lhs = 0.25 * (Q(psi + phi) - Q(psi - phi) + 1j * Q(psi + 1j * phi) - 1j * Q(psi - 1j * phi))
    scale = trace_norm(S) * np.linalg.norm(psi) * np.linalg.norm(phi)
    return _rel(_maxabs(lhs - cohen_q_cross(S, psi, phi)), scale)


def _reconstruction(rng, L, lattice):
    S = _density(rng, L, lattice)
    F = frame_operator(S, lattice)
    psi = sampling.signal(rng, L)
    return float(np.linalg.norm(F @ psi - psi) / np.linalg.norm(psi))


def _sum_identity(rng, L, lattice):
    S = _density(rng, L, lattice)
    T = sampling.operator(rng, L)
    total = op_op_conv(T, parity_conjugate(S))[:: lattice.a, :: lattice.b].sum()
    return abs(total - np.trace(T)) / max(1.0, trace_norm(T))


def _cohen_covariance(rng, L, lattice):
    from .core import tf_shift

    S, psi = sampling.positive(rng, L), sampling.signal(rng, L)
    w = (int(rng.integers(L)), int(rng.integers(L)))
    lhs = cohen_q(S, tf_shift(L, w) @ psi)
    rhs = np.roll(cohen_q(S, psi), w, axis=(0, 1))
    return _rel(_maxabs(lhs - rhs), trace_norm(S) * np.linalg.norm(psi) ** 2)


def invariants(broken_convention: bool = False) -> list[Invariant]:
    return [
        Invariant("moyal", 1e-10, _moyal),
        Invariant("one_star_S", 1e-10, _one_star),
        Invariant("trace_measure_conv", 1e-10, _trace_mu),
        Invariant("adjoint", 1e-12, _adjoint),
        Invariant("parity", 1e-12, _parity),
        Invariant("associativity_A", 1e-10, _assoc_a),
        Invariant("associativity_B", 1e-10, _assoc_b),
        Invariant("positivity", 1e-10, _positivity),
        Invariant("schatten_p1", 1e-10, _schatten(1)),
        Invariant("schatten_p2", 1e-10, _schatten(2)),
        Invariant("schatten_pinf", 1e-10, _schatten(math.inf)),
        Invariant("convolution_theorem", 1e-10, _conv_theorem(+1 if broken_convention else -1)),
        Invariant("op_op_commutativity", 1e-10, _commutativity),
        Invariant("fourier_wigner_roundtrip", 1e-10, _fw_roundtrip),
        Invariant("symplectic_dft_involution", 1e-10, _fsigma_involution),
        Invariant("square_trace", 1e-8, _square_trace),
        Invariant("lidskii_trace", 1e-10, _lidskii),
        Invariant("h_estimate", 1e-8, _h_estimate),
        Invariant("polarization", 1e-10, _polarization),
        Invariant("frame_reconstruction", 1e-8, _reconstruction),
        Invariant("sum_identity", 1e-8, _sum_identity),
        Invariant("cohen_covariance", 1e-10, _cohen_covariance),
    ]


def run_props(cfg: ExperimentConfig, threads: int = 1, *, broken_convention: bool = False) -> ResultTable:
    """One row per invariant. ``broken_convention`` flips the symplectic
    kernel sign as a negative control."""
    started = time.perf_counter()
    lattice = LatticeSpec(cfg.L, *cfg.lattice)
    table = ResultTable("props", ("name", "instances", "max_deviation", "tolerance", "passed"))
    if cfg.repeats == 0:
        return _finish(table, cfg, started)
    suite = invariants(broken_convention)

    def one(idx):
        inv = suite[idx]
        rng = np.random.default_rng([cfg.seed, 3, idx])
        worst = max(inv.check(rng, cfg.L, lattice) for _ in range(cfg.repeats))
        return (inv.name, cfg.repeats, worst, inv.tolerance, bool(worst <= inv.tolerance))

    table.rows = _map(one, list(range(len(suite))), threads)
    table.failures = [f"{r[0]}: max deviation {r[2]:.3e} > {r[3]:.0e}" for r in table.rows if not r[4]]
    return _finish(table, cfg, started)


RUNNERS: dict[str, Callable[..., ResultTable]] = {
    "plateau": run_plateau,
    "converge": run_convergence,
    "continuity": run_continuity,
    "berezin-lieb": run_berezin_lieb,
    "props": run_props,
}


def run(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    return RUNNERS[cfg.experiment](cfg, threads)


# -- spanning check -------------------------------------------------------------

def spanning_check(S) -> int:
    """Dimension of the span of ``{mu * S}`` over single-atom masks at the full
    lattice, inside the L^2-dimensional operator space."""
    S = np.asarray(S, dtype=complex)
    L = S.shape[0]
    fw = np.abs(fourier_wigner(S))
    if fw.min() <= 1e-12:
        raise FourierWignerZero(f"min |F_W(S)| = {fw.min():.3e}")
    vectors = []
    for k in range(L):
        for l in range(L):
            weights = np.zeros((L, L))
            weights[k, l] = 1.0 / L
            vectors.append(shift_average(weights, S).ravel())
    return int(np.linalg.matrix_rank(np.array(vectors)))

