"""Experiment harness: two-source configurations, grid sweeps, CSV output.

An :class:`ExperimentConfig` describes a two-source interference experiment
on the detection screen: Gaussian source profiles give a pair of Gaussian
screen amplitudes at ``+/-L``; rectangular profiles give a pair of sinc
amplitudes whose zero lattices ``m*xi +/- L`` interleave (unless ``2L/xi``
is an integer, in which case the lattices coincide and the affected zeros
are degenerate -- both amplitudes vanish and the bunching dip disappears).

:func:`run_scan` sweeps the grid and records, per point, the one-particle
density, the three joint densities, the boson/fermion ratios and the nearest
amplitude zero. Undefined ratios (distinguishable denominator under the
floor) are kept as NaN internally and rendered as *empty* CSV fields, never
as NaN text. Grid evaluation is chunked; ``BUNCHING_THREADS`` caps the
worker threads, and chunk boundaries are independent of the thread count so
output is byte-identical for any parallelism.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import TextIO

import numpy as np

from . import kernels
from .detector import QuadratureSpec, gauss_legendre_rule, ratio_finite, ratio_finite_closed_form
from .joint import DENOMINATOR_FLOOR, Statistics
from .laws import lorentzian_boson
from .wavefunctions import Gaussian, Sinc, WaveFunction, ZeroPoint, evaluate, find_zeros

__all__ = [
    "Grid",
    "PointPair",
    "FiniteWidth",
    "DetectorModel",
    "ExperimentConfig",
    "gaussian_experiment",
    "rect_experiment",
    "build_experiment",
    "one_particle_density",
    "ScanResult",
    "run_scan",
    "write_csv",
    "WindowAverage",
    "average_ratio_numeric",
    "ConvergenceTable",
    "deficit_convergence",
    "ZeroReport",
    "zero_neighborhood_report",
    "CSV_HEADER",
]

CSV_HEADER = "x,p_one,p_ni,p_boson,p_fermion,rho_b,rho_f,nearest_zero,zero_order"

_CHUNK = 512


@dataclass(frozen=True)
class Grid:
    """Uniform detection grid with ``points`` samples on [x_min, x_max]."""

    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if not (self.x_max > self.x_min):
            raise ValueError(f"grid needs x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if not (isinstance(self.points, int) and self.points >= 2):
            raise ValueError(f"grid needs at least 2 points, got {self.points!r}")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    def values(self) -> np.ndarray:
        xs = np.linspace(self.x_min, self.x_max, self.points)
        if self.x_min == -self.x_max:
            # force exact antisymmetry x[i] = -x[N-1-i] (linspace is only
            # symmetric to ~1 ulp, which cancellation-heavy densities amplify)
            xs = 0.5 * (xs - xs[::-1])
        return xs


@dataclass(frozen=True)
class PointPair:
    """Two ideal point detectors at x - eps and x + eps."""


@dataclass(frozen=True)
class FiniteWidth:
    """One two-particle detector of width 2*eps, integrated by quadrature."""

    quad: QuadratureSpec = QuadratureSpec()


DetectorModel = PointPair | FiniteWidth

_PROFILES = ("gaussian", "rect")


@dataclass(frozen=True)
class ExperimentConfig:
    source_profile: str
    xi: float
    L: float
    epsilon: float
    grid: Grid
    detector: DetectorModel = PointPair()
    statistics: frozenset[Statistics] = frozenset({Statistics.BOSON, Statistics.FERMION})

    def __post_init__(self):
        if self.source_profile not in _PROFILES:
            raise ValueError(
                f"source_profile must be one of {_PROFILES}, got {self.source_profile!r}"
            )
        if not (self.xi > 0):
            raise ValueError(f"xi must be positive, got {self.xi}")
        if not (self.epsilon > 0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not isinstance(self.grid, Grid):
            raise TypeError("grid must be a Grid")
        if not isinstance(self.detector, (PointPair, FiniteWidth)):
            raise TypeError("detector must be PointPair or FiniteWidth")
        object.__setattr__(self, "statistics", frozenset(self.statistics))


def gaussian_experiment(**overrides) -> ExperimentConfig:
    """Default Gaussian two-source experiment: xi=1, L=2, eps=1e-3, [-6,6]x4001."""
    cfg = ExperimentConfig(
        source_profile="gaussian",
        xi=1.0,
        L=2.0,
        epsilon=1e-3,
        grid=Grid(-6.0, 6.0, 4001),
    )
    return replace(cfg, **overrides) if overrides else cfg


def rect_experiment(**overrides) -> ExperimentConfig:
    """Default rectangular two-source experiment: xi=1, L=2.25, eps=0.02, [-10,10]x4001.

    L = 2.25*xi keeps 2L/xi non-integral, so the two sinc zero lattices
    interleave with uniform spacing xi/2 and every zero belongs to exactly
    one wave function.
    """
    cfg = ExperimentConfig(
        source_profile="rect",
        xi=1.0,
        L=2.25,
        epsilon=0.02,
        grid=Grid(-10.0, 10.0, 4001),
    )
    return replace(cfg, **overrides) if overrides else cfg


def build_experiment(config: ExperimentConfig) -> tuple[WaveFunction, WaveFunction]:
    """Screen wave functions of the two sources; psi1 at +L, psi2 at -L."""
    if config.source_profile == "gaussian":
        return Gaussian(config.xi, config.L), Gaussian(config.xi, -config.L)
    two_l = 2.0 * config.L / config.xi
    if abs(two_l - round(two_l)) < 1e-12:
        warnings.warn(
            f"2L/xi = {two_l:g} is an integer: the two sinc zero lattices coincide "
            "and the shared zeros are degenerate (no bunching dip there); "
            "zero_neighborhood_report will flag them",
            stacklevel=2,
        )
    return Sinc(config.xi, config.L), Sinc(config.xi, -config.L)


def one_particle_density(psi1: WaveFunction, psi2: WaveFunction, x: float) -> float:
    """Equal-weight incoherent one-particle density (|psi1|^2 + |psi2|^2)/2.

    The factor 1/2 makes it read as the density of a particle drawn from
    either source with equal odds; any positive constant would do for the
    figure shapes.
    """
    return 0.5 * (abs(evaluate(psi1, x)) ** 2 + abs(evaluate(psi2, x)) ** 2)


@dataclass(frozen=True)
class ScanResult:
    """Per-grid-point densities, ratios and zero annotations of one scan."""

    config: ExperimentConfig
    x: np.ndarray
    p_one: np.ndarray
    p_ni: np.ndarray
    p_boson: np.ndarray
    p_fermion: np.ndarray
    rho_b: np.ndarray
    rho_f: np.ndarray
    zeros: tuple[ZeroPoint, ...]
    nearest_zero: np.ndarray  # index into zeros, -1 where none exist


def _thread_count() -> int:
    raw = os.environ.get("BUNCHING_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_chunked(fn, xs: np.ndarray) -> tuple[np.ndarray, ...]:
    """Apply fn to fixed-size chunks of xs and concatenate in index order.

    Chunk size never depends on the thread count, so the result is
    bit-identical under any BUNCHING_THREADS.
    """
    chunks = [xs[i : i + _CHUNK] for i in range(0, xs.shape[0], _CHUNK)]
    workers = min(_thread_count(), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, chunks))
    else:
        parts = [fn(c) for c in chunks]
    return tuple(np.concatenate(cols) for cols in zip(*parts))


def run_scan(config: ExperimentConfig) -> ScanResult:
    """Sweep the grid, computing densities, ratios and nearest-zero tags."""
    psi1, psi2 = build_experiment(config)
    xs = config.grid.values()
    eps = config.epsilon

    def one_particle_chunk(c):
        return (
            0.5
            * (np.abs(kernels.eval_grid(psi1, c)) ** 2 + np.abs(kernels.eval_grid(psi2, c)) ** 2),
        )

    (p_one,) = _run_chunked(one_particle_chunk, xs)

    if isinstance(config.detector, PointPair):

        def joint_chunk(c):
            return kernels.joint_grid(psi1, psi2, c, eps)

        p_ni, p_boson, p_fermion = _run_chunked(joint_chunk, xs)
    else:
        nodes, weights = gauss_legendre_rule(config.detector.quad.nodes_per_axis)

        def finite_chunk(c):
            num_b, num_f, den = kernels.finite_grid(psi1, psi2, c, eps, nodes, weights)
            return den, num_b, num_f

        p_ni, p_boson, p_fermion = _run_chunked(finite_chunk, xs)

    defined = p_ni >= DENOMINATOR_FLOOR
    with np.errstate(divide="ignore", invalid="ignore"):
        rho_b = np.where(defined, np.clip(p_boson / p_ni, 0.0, 2.0), np.nan)
        rho_f = np.where(defined, np.clip(p_fermion / p_ni, 0.0, 2.0), np.nan)
    if Statistics.BOSON not in config.statistics:
        p_boson = np.full_like(p_boson, np.nan)
        rho_b = np.full_like(rho_b, np.nan)
    if Statistics.FERMION not in config.statistics:
        p_fermion = np.full_like(p_fermion, np.nan)
        rho_f = np.full_like(rho_f, np.nan)

    interval = (config.grid.x_min, config.grid.x_max)
    zeros = sorted(
        find_zeros(psi1, interval, wf_index=1) + find_zeros(psi2, interval, wf_index=2),
        key=lambda z: z.location,
    )
    if zeros:
        locs = np.array([z.location for z in zeros])
        right = np.searchsorted(locs, xs)
        left = np.clip(right - 1, 0, len(zeros) - 1)
        right = np.clip(right, 0, len(zeros) - 1)
        nearest = np.where(
            np.abs(xs - locs[left]) <= np.abs(locs[right] - xs), left, right
        ).astype(np.int64)
    else:
        nearest = np.full(xs.shape, -1, dtype=np.int64)

    return ScanResult(
        config=config,
        x=xs,
        p_one=p_one,
        p_ni=p_ni,
        p_boson=p_boson,
        p_fermion=p_fermion,
        rho_b=rho_b,
        rho_f=rho_f,
        zeros=tuple(zeros),
        nearest_zero=nearest,
    )


def _cell(v: float) -> str:
    return repr(float(v)) if math.isfinite(v) else ""


def write_csv(result: ScanResult, out: TextIO | str) -> None:
    """Write the scan as CSV: shortest round-trip floats, empty for undefined."""
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_csv(result, fh)
        return
    out.write(CSV_HEADER + "\n")
    zeros = result.zeros
    for i in range(result.x.shape[0]):
        zi = result.nearest_zero[i]
        near = repr(float(zeros[zi].location)) if zi >= 0 else ""
        order = str(zeros[zi].order) if zi >= 0 else ""
        row = (
            _cell(result.x[i]),
            _cell(result.p_one[i]),
            _cell(result.p_ni[i]),
            _cell(result.p_boson[i]),
            _cell(result.p_fermion[i]),
            _cell(result.rho_b[i]),
            _cell(result.rho_f[i]),
            near,
            order,
        )
        out.write(",".join(row) + "\n")


@dataclass(frozen=True)
class WindowAverage:
    """Trapezoid average of a ratio over a window, with the undefined share."""

    value: float
    skipped_fraction: float
    points_used: int


def average_ratio_numeric(
    result: ScanResult, window: tuple[float, float], stats: Statistics
) -> WindowAverage:
    """Average rho over ``window`` on the existing grid, skipping undefined points."""
    lo, hi = float(window[0]), float(window[1])
    g = result.config.grid
    if lo < g.x_min or hi > g.x_max or lo >= hi:
        raise ValueError(f"window {window} lies outside the grid [{g.x_min}, {g.x_max}]")
    if stats is Statistics.BOSON:
        y = result.rho_b
    elif stats is Statistics.FERMION:
        y = result.rho_f
    else:
        raise ValueError("average is defined for BOSON or FERMION only")
    inside = (result.x >= lo) & (result.x <= hi)
    if int(inside.sum()) < 100:
        raise ValueError(f"window {window} covers {int(inside.sum())} grid points; need >= 100")
    ok = inside & np.isfinite(y)
    skipped = 1.0 - int(ok.sum()) / int(inside.sum())
    xs, ys = result.x[ok], y[ok]
    if xs.shape[0] < 2:
        raise ValueError("fewer than 2 defined points in window; average undefined")
    value = float(np.trapezoid(ys, xs) / (xs[-1] - xs[0]))
    return WindowAverage(value=value, skipped_fraction=skipped, points_used=int(ok.sum()))


@dataclass(frozen=True)
class ConvergenceTable:
    """Deficit and at-zero ratio versus detector spacing, with fitted slopes.

    ``deficit_regular[i] = 2 - rho_B(probe_x)`` at ``eps[i]``;
    ``rho_zero[i] = rho_B(zero_location)`` (all-NaN when the experiment has
    no zeros). Slopes are least-squares log-log fits, NaN when the column
    has non-positive or undefined entries.
    """

    eps: tuple[float, ...]
    deficit_regular: tuple[float, ...]
    rho_zero: tuple[float, ...]
    slope_deficit: float
    slope_zero: float


def _loglog_slope(eps, vals) -> float:
    v = np.asarray(vals, dtype=float)
    if not (np.isfinite(v).all() and (v > 0).all()):
        return float("nan")
    return float(np.polyfit(np.log(np.asarray(eps)), np.log(v), 1)[0])


def deficit_convergence(
    psi1: WaveFunction,
    psi2: WaveFunction,
    eps_list: list[float],
    probe_x: float,
    zero_location: float | None = None,
) -> ConvergenceTable:
    """Tabulate 2 - rho_B at a regular point and rho_B at a zero over eps.

    Both columns scale as eps^2 (slope 2): the deficit by the second-order
    expansion at a no-zero point, the at-zero value by the local Taylor
    structure of the vanishing amplitude.
    """
    from .joint import ratio_point

    if len(eps_list) < 3:
        raise ValueError(f"need at least 3 epsilon values, got {len(eps_list)}")
    deficits, rho_zero = [], []
    for eps in eps_list:
        rb = ratio_point(psi1, psi2, Statistics.BOSON, probe_x, eps)
        deficits.append(np.nan if rb is None else 2.0 - rb)
        if zero_location is None:
            rho_zero.append(np.nan)
        else:
            rz = ratio_point(psi1, psi2, Statistics.BOSON, zero_location, eps)
            rho_zero.append(np.nan if rz is None else rz)
    return ConvergenceTable(
        eps=tuple(eps_list),
        deficit_regular=tuple(deficits),
        rho_zero=tuple(rho_zero),
        slope_deficit=_loglog_slope(eps_list, deficits),
        slope_zero=_loglog_slope(eps_list, rho_zero),
    )


@dataclass(frozen=True)
class ZeroReport:
    """Numeric ratio around one zero against the generic simple-zero law."""

    zero: ZeroPoint
    status: str  # "ok" | "degenerate" | "higher-order"
    xs: np.ndarray | None
    numeric: np.ndarray | None
    prediction: np.ndarray | None
    max_abs_deviation: float | None


def zero_neighborhood_report(
    psi1: WaveFunction,
    psi2: WaveFunction,
    config: ExperimentConfig,
    points: int = 201,
    degenerate_rtol: float = 1e-6,
) -> list[ZeroReport]:
    """Tabulate the boson ratio over |x - x0| <= 20 eps at every zero.

    Zeros where *both* wave functions vanish (within ``degenerate_rtol`` of
    the partner's peak) are reported as "degenerate" and not tabulated --
    there is no dip to model there. Zeros of order > 1 are reported as
    "higher-order"; the tabulated law is the simple-zero one.
    """
    interval = (config.grid.x_min, config.grid.x_max)
    zeros = sorted(
        find_zeros(psi1, interval, wf_index=1) + find_zeros(psi2, interval, wf_index=2),
        key=lambda z: z.location,
    )
    if not zeros:
        raise ValueError("no zeros of either wave function inside the grid interval")
    eps = config.epsilon
    ref1 = float(np.abs(kernels.eval_grid(psi1, config.grid.values())).max())
    ref2 = float(np.abs(kernels.eval_grid(psi2, config.grid.values())).max())

    reports: list[ZeroReport] = []
    for z in zeros:
        partner = psi2 if z.wf_index == 1 else psi1
        ref = ref2 if z.wf_index == 1 else ref1
        if abs(evaluate(partner, z.location)) <= degenerate_rtol * ref:
            reports.append(ZeroReport(z, "degenerate", None, None, None, None))
            continue
        if z.order > 1:
            reports.append(ZeroReport(z, "higher-order", None, None, None, None))
            continue
        xs = z.location + np.linspace(-20.0 * eps, 20.0 * eps, points)
        if isinstance(config.detector, PointPair):
            p_ni, p_b, _ = kernels.joint_grid(psi1, psi2, xs, eps)
            with np.errstate(divide="ignore", invalid="ignore"):
                numeric = np.where(p_ni >= DENOMINATOR_FLOOR, p_b / p_ni, np.nan)
            prediction = lorentzian_boson(xs, z.location, eps)
        else:
            quad = config.detector.quad
            vals = []
            for x in xs:
                r = ratio_finite(psi1, psi2, Statistics.BOSON, float(x), eps, quad)
                vals.append(np.nan if r is None else r)
            numeric = np.array(vals)
            prediction = np.array([ratio_finite_closed_form(x, z.location, eps) for x in xs])
        dev = np.abs(numeric - prediction)
        max_dev = float(np.nanmax(dev)) if np.isfinite(dev).any() else None
        reports.append(ZeroReport(z, "ok", xs, numeric, prediction, max_dev))
    return reports
