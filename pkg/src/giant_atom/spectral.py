"""Detuning sweeps, Delta x Omega maps and location of special spectral points.

Grid work is vectorised over nodes with numpy, so each node is evaluated
independently and results come back in grid order.  Special points are found
by a dense pre-scan followed by bisection on the sign of a central-difference
slope, which needs no bracketing sign change and so also handles the
touch-zero minima of T (reflection points) and of R (transmission points).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import CountMismatchError, InvalidGridError, InvalidInputError
from .params import AtomParams, ChiralCoupling, GeometryPhase
from .scattering import amplitude_arrays, amplitudes

DIP_THRESHOLD = 0.5
PERFECT_TOL = 1e-9
MIN_SCAN_NODES = 10_001
# bisection stops at this fraction of the range; finer than the 1e-10 required
REFINE_RTOL = 1e-12
SLOPE_STEP_RTOL = 1e-9
SNAP_RTOL = 1e-6


@dataclass(frozen=True)
class SweepGrid:
    """Detuning axis, optionally with a drive-strength axis for 2D maps."""

    delta_min: float
    delta_max: float
    steps: int
    omega_min: float | None = None
    omega_max: float | None = None
    omega_steps: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.delta_min) and math.isfinite(self.delta_max)):
            raise InvalidGridError("grid bounds must be finite")
        if not self.delta_min < self.delta_max:
            raise InvalidGridError(
                f"delta_min ({self.delta_min}) must be < delta_max ({self.delta_max})")
        if int(self.steps) != self.steps or self.steps < 2:
            raise InvalidGridError(f"steps must be an integer >= 2, got {self.steps!r}")
        omega = (self.omega_min, self.omega_max, self.omega_steps)
        if any(v is not None for v in omega):
            if any(v is None for v in omega):
                raise InvalidGridError("omega_min, omega_max and omega_steps go together")
            if not 0.0 <= self.omega_min <= self.omega_max:
                raise InvalidGridError("need 0 <= omega_min <= omega_max")
            if int(self.omega_steps) != self.omega_steps or self.omega_steps < 1:
                raise InvalidGridError("omega_steps must be a positive integer")

    @property
    def has_omega_axis(self) -> bool:
        return self.omega_steps is not None

    def deltas(self) -> np.ndarray:
        return np.linspace(self.delta_min, self.delta_max, int(self.steps))

    def omegas(self) -> np.ndarray:
        if not self.has_omega_axis:
            raise InvalidGridError("grid has no omega axis")
        return np.linspace(self.omega_min, self.omega_max, int(self.omega_steps))


class SpecialKind(enum.Enum):
    PERFECT_TRANSMISSION = "transmission"
    PERFECT_REFLECTION = "reflection"
    DECOUPLING = "decoupling"


@dataclass(frozen=True)
class SpecialPoint:
    delta: float
    kind: SpecialKind
    value: float  # T at the point


@dataclass(frozen=True)
class SpecialPointScan:
    """Located special points.

    ``whole_range`` is set when the target condition holds on every scan node
    (e.g. an uncoupled atom transmits everywhere); ``points`` is then empty.
    """

    points: tuple
    whole_range: bool = False

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def deltas(self) -> list:
        return [p.delta for p in self.points]


@dataclass(frozen=True)
class Spectrum:
    """Amplitudes and probabilities on an increasing detuning grid."""

    delta: np.ndarray
    t: np.ndarray
    r: np.ndarray
    decoupled: np.ndarray

    @property
    def T(self) -> np.ndarray:
        return np.abs(self.t) ** 2

    @property
    def R(self) -> np.ndarray:
        return np.abs(self.r) ** 2

    def __len__(self):
        return len(self.delta)


@dataclass(frozen=True)
class Heatmap:
    """T on a Delta x Omega product grid.

    ``transmission[i, j]`` is at ``omegas[i]``, ``deltas[j]``; flattening is
    row-major, so Delta varies fastest.
    """

    deltas: np.ndarray
    omegas: np.ndarray
    transmission: np.ndarray

    def rows(self):
        """Yield ``(delta, omega, T)`` in row-major (omega-outer) order."""
        for i, om in enumerate(self.omegas):
            for j, d in enumerate(self.deltas):
                yield float(d), float(om), float(self.transmission[i, j])


def sweep_spectrum(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
                   grid: SweepGrid) -> Spectrum:
    deltas = grid.deltas()
    t, r, dec = amplitude_arrays(coupling, atom, geom, deltas)
    return Spectrum(deltas, t, r, dec)


def heatmap_delta_omega(coupling: ChiralCoupling, atom_base: AtomParams,
                        geom: GeometryPhase, grid: SweepGrid) -> Heatmap:
    """Transmission versus detuning and drive strength.

    The drive of ``atom_base`` is replaced by each value on the omega axis.
    """
    deltas = grid.deltas()
    omegas = grid.omegas()
    out = np.empty((len(omegas), len(deltas)))
    for i, om in enumerate(omegas):
        t, _, _ = amplitude_arrays(coupling, atom_base.with_drive(float(om)), geom, deltas)
        out[i] = np.abs(t) ** 2
    return Heatmap(deltas, omegas, out)


def local_minima(values) -> np.ndarray:
    """Indices of discrete local minima, from sign changes of the differences.

    Flat runs are skipped over, so a plateau-bottomed minimum is reported once
    (at its first node).  Endpoints are never minima.
    """
    values = np.asarray(values, dtype=float)
    steps = np.sign(np.diff(values))
    nz = np.flatnonzero(steps)
    if len(nz) < 2:
        return np.empty(0, dtype=int)
    s = steps[nz]
    turn = (s[:-1] < 0) & (s[1:] > 0)
    return nz[:-1][turn] + 1


def count_local_minima(values) -> int:
    return len(local_minima(values))


def _refine_minima(func, lo, hi, xtol, step):
    """Vectorised bisection on the sign of the slope of ``func``.

    ``func`` maps an array of detunings to values; ``lo``/``hi`` are arrays of
    bracket ends, each bracket holding one minimum.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    if lo.size == 0:
        return lo
    n_iter = int(np.ceil(np.log2(max(np.max(hi - lo), xtol) / xtol))) + 1
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        slope = func(mid + step) - func(mid - step)
        hi = np.where(slope > 0, mid, hi)
        lo = np.where(slope < 0, mid, lo)
        if np.all(slope == 0):
            break
    return 0.5 * (lo + hi)


def _scan_nodes(bounds, n_scan):
    lo, hi = map(float, bounds)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidGridError(f"invalid detuning range {bounds!r}")
    return np.linspace(lo, hi, max(int(n_scan), MIN_SCAN_NODES)), hi - lo


def pole_detunings(atom: AtomParams) -> list:
    """Detunings where the drive-dressed resonance term vanishes.

    These solve delta * (delta + omega_e - omega_s) = Omega**2, or delta = 0
    without drive; the only places a decoupling point can sit.
    """
    om2 = atom.omega_drive * atom.omega_drive
    if om2 == 0.0:
        return [0.0]
    c = atom.omega_e - atom.omega_s
    disc = math.sqrt(c * c + 4.0 * om2)
    # stable quadratic roots
    q = -0.5 * (c + math.copysign(disc, c if c != 0 else 1.0))
    return sorted([q, -om2 / q])


def _touch_zero_points(func, nodes, span, tol):
    values = func(nodes)
    idx = local_minima(values)
    ends = []
    if values[0] < values[1] and values[0] < tol:
        ends.append(0)
    if values[-1] < values[-2] and values[-1] < tol:
        ends.append(len(nodes) - 1)
    idx = np.concatenate([idx, np.array(ends, dtype=int)])
    lo = nodes[np.maximum(idx - 1, 0)]
    hi = nodes[np.minimum(idx + 1, len(nodes) - 1)]
    xs = _refine_minima(func, lo, hi, REFINE_RTOL * span, SLOPE_STEP_RTOL * span)
    xs = np.clip(xs, nodes[0], nodes[-1])
    return values, np.sort(xs[func(xs) < tol]) if xs.size else xs


def _dedupe(xs, width):
    out = []
    for x in xs:
        if not out or x - out[-1] > width:
            out.append(float(x))
    return out


def find_special_points(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
                        bounds, kind: SpecialKind, tol: float = PERFECT_TOL,
                        n_scan: int = 20_001) -> SpecialPointScan:
    """Locate perfect-reflection, perfect-transmission or decoupling points.

    Args:
        bounds: ``(delta_lo, delta_hi)`` search range.
        kind: Which condition to look for.  Perfect reflection is T < tol,
            perfect transmission R < tol; decoupling additionally needs the
            closed form to flag the point as a removable 0/0.
        tol: Threshold on T or R.
        n_scan: Pre-scan nodes (at least 10001 are used).

    Returns:
        A :class:`SpecialPointScan`; an empty one is a valid answer.
    """
    if not tol > 0.0:
        raise InvalidInputError(f"tol must be > 0, got {tol!r}")
    kind = SpecialKind(kind)
    nodes, span = _scan_nodes(bounds, n_scan)

    def trans(x):
        t, _, _ = amplitude_arrays(coupling, atom, geom, x)
        return np.abs(t) ** 2

    def refl(x):
        _, r, _ = amplitude_arrays(coupling, atom, geom, x)
        return np.abs(r) ** 2

    func = trans if kind is SpecialKind.PERFECT_REFLECTION else refl
    values, xs = _touch_zero_points(func, nodes, span, tol)
    if np.all(values < tol):
        return SpecialPointScan((), whole_range=True)
    xs = _dedupe(xs, 4 * REFINE_RTOL * span)

    if kind is SpecialKind.DECOUPLING:
        poles = [p for p in pole_detunings(atom) if nodes[0] <= p <= nodes[-1]]
        snapped = []
        for x in xs:
            if amplitudes(coupling, atom, geom, x).decoupled:
                snapped.append(x)
                continue
            near = [p for p in poles if abs(p - x) <= SNAP_RTOL * span]
            if near and amplitudes(coupling, atom, geom, near[0]).decoupled:
                snapped.append(near[0])
        xs = _dedupe(sorted(snapped), 4 * REFINE_RTOL * span)

    points = []
    for x in xs:
        amp = amplitudes(coupling, atom, geom, x)
        points.append(SpecialPoint(x, kind, amp.big_t))
    return SpecialPointScan(tuple(points))


def transmission_dips(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
                      bounds, n_scan: int = 20_001):
    """Refined positions and depths of the local minima of T below 0.5."""
    nodes, span = _scan_nodes(bounds, n_scan)

    def trans(x):
        t, _, _ = amplitude_arrays(coupling, atom, geom, x)
        return np.abs(t) ** 2

    values = trans(nodes)
    idx = local_minima(values)
    idx = idx[values[idx] < DIP_THRESHOLD]
    xs = _refine_minima(trans, nodes[idx - 1], nodes[idx + 1],
                        REFINE_RTOL * span, SLOPE_STEP_RTOL * span)
    xs = _dedupe(np.sort(xs), 4 * REFINE_RTOL * span)
    depths = [float(trans(x)) for x in xs]
    return xs, depths


def dip_separation(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
                   bounds, n_scan: int = 20_001) -> float:
    """Distance between the two transmission dips in ``bounds``.

    Raises:
        CountMismatchError: There are not exactly two dips.
    """
    xs, _ = transmission_dips(coupling, atom, geom, bounds, n_scan)
    if len(xs) != 2:
        raise CountMismatchError(len(xs))
    return abs(xs[1] - xs[0])


def symmetry_defect(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
                    grid: SweepGrid) -> float:
    """max |T(delta) - T(-delta)| over a grid symmetric about zero."""
    if abs(grid.delta_min + grid.delta_max) > 1e-12 * max(abs(grid.delta_min), 1.0):
        raise InvalidGridError(
            f"grid [{grid.delta_min}, {grid.delta_max}] is not symmetric about 0")
    d = grid.deltas()
    t_pos, _, _ = amplitude_arrays(coupling, atom, geom, d)
    t_neg, _, _ = amplitude_arrays(coupling, atom, geom, -d)
    return float(np.max(np.abs(np.abs(t_pos) ** 2 - np.abs(t_neg) ** 2)))


class DriveSign(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> int:
        return 1 if self is DriveSign.PLUS else -1


def _shifted_frequency(omega_e, omega_drive, sign):
    sign = DriveSign(sign)
    w = omega_e + sign.factor * omega_drive
    if not w > 0.0:
        raise InvalidInputError(
            f"omega_e {'+' if sign.factor > 0 else '-'} omega_drive must be > 0, got {w}")
    return w


def special_tau_solutions(omega_e: float, omega_drive: float, sign, n_range) -> list:
    """Delays at which the phase at delta = +-Omega is an odd multiple of pi.

    With theta = omega_e * tau the phase at delta = sign * Omega is
    (omega_e + sign * Omega) * tau, so tau = (2n + 1) * pi / (omega_e +- Omega).

    Args:
        n_range: Iterable of integers n; the odd order used is 2n + 1.
    """
    w = _shifted_frequency(omega_e, omega_drive, sign)
    return [(2 * int(n) + 1) * math.pi / w for n in n_range]


def special_tau_window(omega_e: float, omega_drive: float, sign, tau_min: float,
                       tau_max: float) -> list:
    """All ``(order, tau)`` with odd ``order`` and tau_min <= tau <= tau_max."""
    w = _shifted_frequency(omega_e, omega_drive, sign)
    if not 0.0 <= tau_min <= tau_max:
        raise InvalidInputError("need 0 <= tau_min <= tau_max")
    n_lo = math.ceil((tau_min * w / math.pi - 1.0) / 2.0) - 1
    n_hi = math.floor((tau_max * w / math.pi - 1.0) / 2.0) + 1
    out = []
    for n, tau in zip(range(n_lo, n_hi + 1),
                      special_tau_solutions(omega_e, omega_drive, sign, range(n_lo, n_hi + 1))):
        if n >= 0 and tau_min <= tau <= tau_max:
            out.append((2 * n + 1, tau))
    return out
