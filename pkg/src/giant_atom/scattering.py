"""Closed-form single-photon scattering amplitudes of the two-point giant atom.

The amplitudes contain the drive through the self-energy-like term
``Omega**2 / (delta + omega_e - omega_s)``.  Everything here is evaluated
after multiplying numerator and denominator by that pole factor, so the point
``delta + omega_e == omega_s`` is regular.  When both cleared numerator and
denominator vanish the atom is decoupled from the waveguide and the amplitudes
are fixed by continuity to t = 1, r = 0.

All functions accept a scalar detuning; :func:`amplitude_arrays` and
:func:`transmission` also accept numpy arrays and are what the sweeps use.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    InvalidInputError,
    NumericalSingularityError,
    RegimeMismatchError,
    ResonanceRequiredError,
)
from .params import (
    TWO_PI,
    AtomParams,
    ChiralCoupling,
    Classification,
    CouplingRegime,
    GeometryPhase,
    ScatteringAmplitudes,
)

DECOUPLING_TOL = 1e-12
SINGULAR_DEN = 1e-300
REGIME_TOL = 1e-9


def _check_delta(delta):
    delta = np.asarray(delta, dtype=float)
    if not np.all(np.isfinite(delta)):
        bad = int(np.flatnonzero(~np.isfinite(delta.ravel()))[0]) if delta.ndim else None
        raise InvalidInputError(f"detuning must be finite (index {bad})")
    return delta


def _phase_sums(coupling: ChiralCoupling, phi):
    """Interference sums over the coupling-point pairs (i, j).

    Returns the sine sums, the left and right cosine sums and the reflection
    sum, where the pair phase is |i - j| * phi and the reflection picks up
    exp(i k (x_i + x_j)) with x_1 = 0, k x_2 = phi.
    """
    sl = (math.sqrt(coupling.gamma_l1), math.sqrt(coupling.gamma_l2))
    sr = (math.sqrt(coupling.gamma_r1), math.sqrt(coupling.gamma_r2))
    sin_sum = 0.0
    cos_l = 0.0
    cos_r = 0.0
    for i in range(2):
        for j in range(2):
            if i == j:
                # phi_ii = 0
                cos_l = cos_l + sl[i] * sl[j]
                cos_r = cos_r + sr[i] * sr[j]
            else:
                sin_sum = sin_sum + (sr[i] * sr[j] + sl[i] * sl[j]) * np.sin(phi)
                cos_l = cos_l + sl[i] * sl[j] * np.cos(phi)
                cos_r = cos_r + sr[i] * sr[j] * np.cos(phi)
    # sum_ij 2 sqrt(gL_i gR_j) exp(i k (x_i + x_j)) factorises; the product
    # form keeps r accurate where both factors vanish (decoupling points)
    hop = np.exp(1j * phi)
    refl = 2.0 * (sl[0] + sl[1] * hop) * (sr[0] + sr[1] * hop)
    return sin_sum, cos_l, cos_r, refl


def _cleared(coupling, atom, geom, delta):
    """Cleared numerators/denominator of t and r plus the zero-test scale."""
    phi = geom.phase(delta)
    sin_sum, cos_l, cos_r, refl = _phase_sums(coupling, phi)
    drive2 = atom.omega_drive * atom.omega_drive
    if drive2 > 0.0:
        clear = delta + atom.omega_e - atom.omega_s
        real = clear * (delta - sin_sum) - drive2
    else:
        # without drive there is no pole; clearing would add a spurious 0/0
        clear = np.ones_like(delta)
        real = delta - sin_sum
    num_t = real + 1j * clear * (cos_l - cos_r)
    den = real + 1j * clear * (cos_l + cos_r)
    num_r = -1j * clear * refl

    # rounding of sin/cos grows with the unreduced phase
    windings = np.maximum(1.0, (np.abs(delta) * geom.tau + geom.unreduced_phase) / TWO_PI)
    mag = np.maximum.reduce([
        np.abs(clear * delta),
        np.full_like(delta, drive2),
        np.abs(clear) * coupling.total,
    ])
    scale = np.maximum(mag * windings, np.finfo(float).tiny)
    return num_t, num_r, den, scale


def amplitude_arrays(coupling: ChiralCoupling, atom: AtomParams,
                     geom: GeometryPhase, delta):
    """Vectorised amplitudes.

    Args:
        coupling: Decay rates at the two points.
        atom: Level energies and drive.
        geom: Delay and static phase.
        delta: Detuning, scalar or array.

    Returns:
        ``(t, r, decoupled)`` as numpy arrays with the shape of ``delta``.

    Raises:
        InvalidInputError: A detuning is not finite.
        NumericalSingularityError: The cleared denominator vanished at a point
            that is not a decoupling point.  ``index`` holds the flat index.
    """
    delta = _check_delta(delta)
    num_t, num_r, den, scale = _cleared(coupling, atom, geom, delta)
    thresh = np.maximum(DECOUPLING_TOL * scale, SINGULAR_DEN)
    decoupled = (np.abs(num_t) <= thresh) & (np.abs(den) <= thresh)
    singular = ~decoupled & (np.abs(den) < SINGULAR_DEN)
    if np.any(singular):
        idx = int(np.flatnonzero(np.ravel(singular))[0])
        raise NumericalSingularityError(
            "cleared denominator vanished with nonzero numerator",
            index=idx if np.ndim(delta) else None,
        )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        # complex division of identical operands is not always exactly 1
        t = np.where(decoupled | (num_t == den), 1.0 + 0j, num_t / den)
        r = np.where(decoupled, 0j, num_r / den)
    return t, r, decoupled


def amplitudes(coupling: ChiralCoupling, atom: AtomParams, geom: GeometryPhase,
               delta: float) -> ScatteringAmplitudes:
    """Transmission and reflection amplitudes at a single detuning."""
    t, r, dec = amplitude_arrays(coupling, atom, geom, float(delta))
    return ScatteringAmplitudes(complex(t), complex(r), bool(dec))


def transmission(coupling, atom, geom, delta):
    """T = |t|**2, vectorised."""
    t, _, _ = amplitude_arrays(coupling, atom, geom, delta)
    return np.abs(t) ** 2


def reflection(coupling, atom, geom, delta):
    """R = |r|**2, vectorised; exactly zero at decoupling points."""
    _, r, _ = amplitude_arrays(coupling, atom, geom, delta)
    return np.abs(r) ** 2


def markovian_amplitudes(coupling: ChiralCoupling, atom: AtomParams, theta: float,
                         delta: float) -> ScatteringAmplitudes:
    """Amplitudes with the detuning-dependent phase dropped (phase = theta)."""
    return amplitudes(coupling, atom, GeometryPhase.markovian(theta), delta)


def resonant_transmission(coupling: ChiralCoupling, atom: AtomParams,
                          geom: GeometryPhase, delta):
    """Transmission probability at two-photon resonance (omega_s == omega_e).

    Evaluates the modulus-squared form directly, multiplied through by
    ``delta**2`` when the drive is on, so ``delta = 0`` gives T = 1 for any
    nonzero drive.  Accepts arrays.

    Raises:
        ResonanceRequiredError: ``atom.omega_s != atom.omega_e``.
    """
    if not atom.resonant:
        raise ResonanceRequiredError(
            f"resonant formula needs omega_s == omega_e, got {atom.omega_s} != {atom.omega_e}"
        )
    delta = _check_delta(delta)
    g = coupling
    s_ll = math.sqrt(g.gamma_l1 * g.gamma_l2)
    s_rr = math.sqrt(g.gamma_r1 * g.gamma_r2)
    phi = geom.phase(delta)
    drive2 = atom.omega_drive * atom.omega_drive
    clear = delta if drive2 > 0.0 else np.ones_like(delta)
    real = clear * (delta - 2.0 * (s_ll + s_rr) * np.sin(phi)) - drive2
    im_num = clear * (g.gamma_l1 + g.gamma_l2 - g.gamma_r1 - g.gamma_r2
                      + 2.0 * (s_ll - s_rr) * np.cos(phi))
    im_den = clear * (g.total + 2.0 * (s_ll + s_rr) * np.cos(phi))
    num = real ** 2 + im_num ** 2
    den = real ** 2 + im_den ** 2
    windings = np.maximum(1.0, (np.abs(delta) * geom.tau + geom.unreduced_phase) / TWO_PI)
    scale = np.maximum.reduce([np.abs(clear * delta), np.full_like(delta, drive2),
                               np.abs(clear) * g.total]) * windings
    return _ratio_or_one(num, den, (DECOUPLING_TOL * scale) ** 2)


def _ratio_or_one(num, den, zero):
    """num / den, with 0/0 (both <= zero) resolved to 1 by continuity."""
    both_zero = (num <= zero) & (den <= zero)
    safe = np.where(both_zero | (den == 0.0), 1.0, den)
    out = np.where(both_zero, 1.0, num / safe)
    return float(out) if np.ndim(out) == 0 else out


def classify_coupling(coupling: ChiralCoupling, tol: float = REGIME_TOL) -> Classification:
    """Sort a coupling into the BEC, BUEC or general chiral regime.

    BEC: equal left rates and equal right rates at the two points, left != right.
    BUEC: chirality exchanged between the points (gamma_L1 = gamma_R2,
    gamma_R1 = gamma_L2).  A coupling meeting both sets of equalities is the
    non-chiral symmetric case and is reported as BEC with ``symmetric=True``.
    """
    if not tol > 0.0:
        raise InvalidInputError(f"tol must be > 0, got {tol!r}")
    g = coupling
    even = abs(g.gamma_l1 - g.gamma_l2) <= tol and abs(g.gamma_r1 - g.gamma_r2) <= tol
    uneven = abs(g.gamma_l1 - g.gamma_r2) <= tol and abs(g.gamma_r1 - g.gamma_l2) <= tol
    if even and uneven:
        return Classification(CouplingRegime.BEC, tol, symmetric=True)
    if even and abs(g.gamma_l1 - g.gamma_r1) > tol:
        return Classification(CouplingRegime.BEC, tol)
    if uneven:
        return Classification(CouplingRegime.BUEC, tol)
    return Classification(CouplingRegime.GENERAL, tol)


def buec_reduced_transmission(coupling: ChiralCoupling, atom: AtomParams, delta,
                              tol: float = REGIME_TOL):
    """Resonant BUEC transmission on the odd-pi phase condition.

    The caller is responsible for the phase condition
    ``delta * tau + theta = (2n + 1) * pi``; only the coupling regime and the
    resonance are checked here.
    """
    kind = classify_coupling(coupling, tol)
    if kind.regime is not CouplingRegime.BUEC and not kind.symmetric:
        raise RegimeMismatchError(f"coupling {coupling.as_tuple()} is not BUEC")
    if not atom.resonant:
        raise ResonanceRequiredError("reduced BUEC formula needs omega_s == omega_e")
    delta = _check_delta(delta)
    g = coupling
    width = ((math.sqrt(g.gamma_l1) - math.sqrt(g.gamma_l2)) ** 2
             + (math.sqrt(g.gamma_r1) - math.sqrt(g.gamma_r2)) ** 2)
    drive2 = atom.omega_drive * atom.omega_drive
    if drive2 > 0.0:
        shift = delta * delta - drive2
        clear = delta
    else:
        shift = delta
        clear = np.ones_like(delta)
    num = shift ** 2
    den = num + (clear * width) ** 2
    return _ratio_or_one(num, den, 0.0)


def markovianity_ratio(coupling: ChiralCoupling, geom: GeometryPhase) -> float:
    """tau times the total decay rate; << 1 means the delay is negligible."""
    return geom.tau * coupling.total
