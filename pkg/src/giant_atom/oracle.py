"""Direct solution of the stationary single-excitation scattering problem.

The waveguide amplitudes are piecewise plane waves: right-movers ``1, A, t``
and left-movers ``r, B, 0`` on the three intervals cut by the coupling points
``x_1 = 0`` and ``x_2 = d``.  Integrating the field equations across each
point gives four jump conditions; together with the two atomic amplitude
equations they form a 6x6 complex linear system in
``(A, B, t, r, C_e, C_s)``.  The field value that enters the atomic equation
at a coupling point is the mean of its two one-sided limits.

Conventions: group velocity 1, k_0 = 0, and ``exp(i k d)`` equal to
``exp(i (delta * tau + theta))`` so the solution is directly comparable with
the closed forms in :mod:`giant_atom.scattering`.

Nothing in this module calls the closed-form amplitudes; it is the
independent reference for them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericalError
from .params import AtomParams, ChiralCoupling, GeometryPhase, ScatteringAmplitudes

# |det| relative to the Hadamard bound.  Decoupling points are singular only
# up to rounding of the phase (|det|/bound ~ 1e-14 there), so an absolute
# floor would let noise through; generic draws sit above 1e-4.
SINGULAR_DET = 1e-12

UNKNOWNS = ("a_mid", "b_mid", "t", "r", "c_e", "c_s")


class SingularSystemError(NumericalError):
    pass


def gauss_solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` by Gaussian elimination with partial pivoting.

    Works on small dense complex systems given as nested lists (or anything
    indexable).  Inputs are copied, not modified.

    Returns:
        ``(x, det)``: the solution as a list and the determinant.

    Raises:
        SingularSystemError: A pivot column is exactly zero.
    """
    n = len(rhs)
    a = [[complex(v) for v in row] for row in matrix]
    b = [complex(v) for v in rhs]
    det = 1.0 + 0j
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0:
            raise SingularSystemError(f"zero pivot in column {k}")
        if p != k:
            a[k], a[p] = a[p], a[k]
            b[k], b[p] = b[p], b[k]
            det = -det
        pivot = a[k][k]
        det *= pivot
        for i in range(k + 1, n):
            lam = a[i][k] / pivot
            if lam != 0:
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] -= lam * row_k[j]
                b[i] -= lam * b[k]
    x = [0j] * n
    for k in range(n - 1, -1, -1):
        acc = b[k]
        for j in range(k + 1, n):
            acc -= a[k][j] * x[j]
        x[k] = acc / a[k][k]
    return x, det


@dataclass(frozen=True)
class ScatteringState:
    """Full solution of the piecewise scattering ansatz.

    ``singular`` is set when the linear system had no unique solution (the
    atom is decoupled from the waveguide); the state is then the
    by-continuity one: unit transmission, no reflection, atom unexcited.
    """

    a_mid: complex
    b_mid: complex
    t: complex
    r: complex
    c_e: complex
    c_s: complex
    singular: bool = False

    @property
    def big_t(self) -> float:
        return abs(self.t) ** 2

    @property
    def big_r(self) -> float:
        return abs(self.r) ** 2

    def amplitudes(self) -> ScatteringAmplitudes:
        return ScatteringAmplitudes(self.t, self.r, self.singular)


DECOUPLED_STATE = ScatteringState(1 + 0j, 0j, 1 + 0j, 0j, 0j, 0j, singular=True)


def _setup(coupling, atom, geom, delta):
    g_l1, g_r1, g_l2, g_r2 = coupling.strengths
    phase = cmath.exp(1j * float(geom.phase(delta)))
    detuning_s = delta + atom.omega_e - atom.omega_s
    return g_l1, g_r1, g_l2, g_r2, phase, detuning_s


def build_system(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
                 delta: float):
    """Assemble the 6x6 system ``M x = b`` for x = (A, B, t, r, C_e, C_s)."""
    g_l1, g_r1, g_l2, g_r2, e, ds = _setup(coupling, atom, geom, delta)
    ec = e.conjugate()
    om = atom.omega_drive
    m = [
        # right-mover jump at x1: A - 1 = -i g_R1 C_e
        [1, 0, 0, 0, 1j * g_r1, 0],
        # left-mover jump at x1: B - r = +i g_L1 C_e
        [0, 1, 0, -1, -1j * g_l1, 0],
        # right-mover jump at x2: (t - A) e = -i g_R2 C_e
        [-e, 0, e, 0, 1j * g_r2, 0],
        # left-mover jump at x2: (0 - B) e* = +i g_L2 C_e
        [0, -ec, 0, 0, -1j * g_l2, 0],
        # atomic |e>: mean-of-limits field values at each point
        [-(g_r1 + g_r2 * e) / 2, -(g_l1 + g_l2 * ec) / 2, -g_r2 * e / 2, -g_l1 / 2,
         delta, -om],
        # atomic |s>
        [0, 0, 0, 0, -om, ds],
    ]
    b = [1, 0, 0, 0, g_r1 / 2, 0]
    return m, b


def solve_scattering_linear_system(coupling: ChiralCoupling, atom: AtomParams,
                                   geom: GeometryPhase, delta: float) -> ScatteringState:
    """Solve for the scattering state of a photon incident from the left.

    Without drive the metastable level decouples; C_s is then set to zero and
    the remaining 5x5 two-level problem is solved.  A singular system returns
    :data:`DECOUPLED_STATE`.
    """
    delta = float(delta)
    if not math.isfinite(delta):
        raise InvalidInputError(f"detuning must be finite, got {delta!r}")
    m, b = build_system(coupling, atom, geom, delta)
    if atom.omega_drive == 0.0:
        m = [row[:5] for row in m[:5]]
        b = b[:5]
    hadamard = math.prod(math.sqrt(sum(abs(v) ** 2 for v in row)) for row in m)
    try:
        x, det = gauss_solve(m, b)
    except SingularSystemError:
        return DECOUPLED_STATE
    if abs(det) < SINGULAR_DET * hadamard:
        return DECOUPLED_STATE
    if len(x) == 5:
        x.append(0j)
    return ScatteringState(*x)


def _equation_residuals(state, coupling, atom, geom, delta):
    g_l1, g_r1, g_l2, g_r2, e, ds = _setup(coupling, atom, geom, delta)
    a, b_, t, r, ce, cs = (state.a_mid, state.b_mid, state.t, state.r, state.c_e, state.c_s)
    field = (g_r1 * (1 + a) / 2 + g_l1 * (r + b_) / 2
             + g_r2 * e * (a + t) / 2 + g_l2 * e.conjugate() * b_ / 2)
    return [
        a - 1 + 1j * g_r1 * ce,
        b_ - r - 1j * g_l1 * ce,
        (t - a) * e + 1j * g_r2 * ce,
        -b_ * e.conjugate() - 1j * g_l2 * ce,
        delta * ce - atom.omega_drive * cs - field,
        ds * cs - atom.omega_drive * ce,
    ]


def residual_norm(state: ScatteringState, coupling: ChiralCoupling, atom: AtomParams,
                  geom: GeometryPhase, delta: float) -> float:
    """Largest absolute residual of the six scattering equations at ``state``."""
    return max(abs(v) for v in _equation_residuals(state, coupling, atom, geom, float(delta)))


def state_from_amplitudes(amps: ScatteringAmplitudes, coupling: ChiralCoupling,
                          atom: AtomParams, geom: GeometryPhase,
                          delta: float) -> ScatteringState:
    """Rebuild the full state from t and r via the jump conditions.

    C_e follows from whichever of the t or r jump relations has the larger
    coupling prefactor; A and B from the jumps at x1 and x2; C_s from the
    metastable equation (or the excited one when delta_s is ~0).
    """
    delta = float(delta)
    g_l1, g_r1, g_l2, g_r2, e, ds = _setup(coupling, atom, geom, delta)
    t, r = complex(amps.t), complex(amps.r)
    coef_t = 1j * (g_r1 + g_r2 * e.conjugate())  # 1 - t = coef_t C_e
    coef_r = -1j * (g_l1 + g_l2 * e)  # r = coef_r C_e
    if amps.decoupled or max(abs(coef_t), abs(coef_r)) == 0.0:
        ce = 0j
    elif abs(coef_t) >= abs(coef_r):
        ce = (1 - t) / coef_t
    else:
        ce = r / coef_r
    a = 1 - 1j * g_r1 * ce
    b_ = -1j * g_l2 * e * ce
    om = atom.omega_drive
    if om == 0.0:
        cs = 0j
    elif abs(ds) > 1e-6 * om:
        cs = om * ce / ds
    else:
        field = (g_r1 * (1 + a) / 2 + g_l1 * (r + b_) / 2
                 + g_r2 * e * (a + t) / 2 + g_l2 * e.conjugate() * b_ / 2)
        cs = (delta * ce - field) / om
    return ScatteringState(a, b_, t, r, ce, cs, singular=amps.decoupled)


@dataclass(frozen=True)
class Draw:
    """One randomised parameter set for the oracle comparison."""

    coupling: ChiralCoupling
    atom: AtomParams
    geom: GeometryPhase
    delta: float


def random_draws(n: int, seed: int):
    """Yield ``n`` reproducible parameter draws.

    Ranges: each rate in [0, 5], drive in [0, 10], tau in [0, 3], theta in
    [0, 2*pi), detuning in [-30, 30], omega_s - omega_e in [-5, 5] and
    omega_e in [0, 10].  Uses numpy's PCG64 generator seeded with ``seed``.
    """
    rng = np.random.default_rng(seed)
    for _ in range(n):
        rates = rng.uniform(0.0, 5.0, size=4)
        drive = rng.uniform(0.0, 10.0)
        tau = rng.uniform(0.0, 3.0)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        delta = rng.uniform(-30.0, 30.0)
        offset = rng.uniform(-5.0, 5.0)
        omega_e = rng.uniform(0.0, 10.0)
        yield Draw(
            ChiralCoupling(*rates),
            AtomParams(omega_e, omega_e + offset, drive),
            GeometryPhase.free(tau, theta),
            delta,
        )
