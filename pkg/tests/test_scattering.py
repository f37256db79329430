"""Closed-form amplitudes: worked examples and invariants."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from giant_atom import (
    AtomParams,
    ChiralCoupling,
    CouplingRegime,
    GeometryPhase,
    InvalidInputError,
    RegimeMismatchError,
    ResonanceRequiredError,
    amplitude_arrays,
    amplitudes,
    buec_reduced_transmission,
    classify_coupling,
    markovian_amplitudes,
    markovianity_ratio,
    resonant_transmission,
    solve_scattering_linear_system,
)

from conftest import PI, couplings, detunings, drives, rates, taus, thetas


# --- amplitudes -------------------------------------------------------------

@given(detunings, drives)
def test_uncoupled_atom_is_transparent(delta, drive):
    amp = amplitudes(ChiralCoupling(0, 0, 0, 0), AtomParams(0.0, omega_drive=drive),
                     GeometryPhase.free(1.0, 0.3), delta)
    assert amp.t == pytest.approx(1.0, abs=1e-15)
    assert amp.r == 0


@pytest.mark.parametrize("delta", [-7.0, -2 * PI, 0.0, 1.3, 2 * PI, 11.0])
def test_bec_odd_phase_transmits_fully(bec, delta):
    amp = markovian_amplitudes(bec, AtomParams(0.0, omega_drive=2 * PI), PI, delta)
    assert amp.big_t == pytest.approx(1.0, abs=1e-12)


def test_matches_oracle_non_markovian():
    coupling = ChiralCoupling(1.0, 0.25, 0.25, 1.0)
    atom = AtomParams(0.0)
    geom = GeometryPhase.free(1.0, 0.0)
    closed = amplitudes(coupling, atom, geom, 0.7)
    ref = solve_scattering_linear_system(coupling, atom, geom, 0.7)
    assert abs(closed.t - ref.t) < 1e-10
    assert abs(abs(closed.r) - abs(ref.r)) < 1e-10
    # with kd = delta*tau + theta the phase of r agrees as well
    assert abs(closed.r - ref.r) < 1e-10


def test_pole_point_is_regular():
    # delta + omega_e - omega_s = 0 is a pole of the bare expression
    atom = AtomParams(0.0, omega_s=1.5, omega_drive=2.0)
    amp = amplitudes(ChiralCoupling(1, 2, 0.5, 1), atom, GeometryPhase.free(0.4, 1.0), 1.5)
    assert amp.t == pytest.approx(1.0)
    assert not amp.decoupled


@pytest.mark.parametrize("bad", [float("nan"), float("inf")])
def test_non_finite_detuning(bec, resonant, bad):
    with pytest.raises(InvalidInputError):
        amplitudes(bec, resonant, GeometryPhase.markovian(0.0), bad)


def test_array_and_scalar_paths_agree(buec):
    atom = AtomParams(0.0, omega_drive=2 * PI)
    geom = GeometryPhase.free(0.7, 0.4)
    deltas = np.linspace(-10, 10, 41)
    t, r, _ = amplitude_arrays(buec, atom, geom, deltas)
    for d, tt, rr in zip(deltas, t, r):
        amp = amplitudes(buec, atom, geom, d)
        # vectorised numpy kernels may round differently in the last ulp
        assert abs(amp.t - tt) < 1e-15 and abs(amp.r - rr) < 1e-15


# --- resonant T and its BUEC reduction ---------------------------------------

def test_resonant_two_level_zero(buec):
    assert resonant_transmission(buec, AtomParams(0.0), GeometryPhase.markovian(0.0), 0.0) == 0.0


def test_resonant_driven_dips(buec):
    atom = AtomParams(0.0, omega_drive=2 * PI)
    geom = GeometryPhase.markovian(0.0)
    assert resonant_transmission(buec, atom, geom, 2 * PI) == pytest.approx(0.0, abs=1e-12)
    assert resonant_transmission(buec, atom, geom, -2 * PI) == pytest.approx(0.0, abs=1e-12)


def _hand_reduced(delta, drive, gl1, gr1, gl2, gr2):
    shift = delta - drive ** 2 / delta
    width = (math.sqrt(gl1) - math.sqrt(gl2)) ** 2 + (math.sqrt(gr1) - math.sqrt(gr2)) ** 2
    return shift ** 2 / (shift ** 2 + width ** 2)


def test_resonant_off_dip_value(buec):
    expected = 9 * PI ** 2 / (9 * PI ** 2 + (8 - 4 * math.sqrt(3)) ** 2)
    assert expected == pytest.approx(_hand_reduced(4 * PI, 2 * PI, 1, 3, 3, 1), rel=1e-14)
    atom = AtomParams(0.0, omega_drive=2 * PI)
    got = resonant_transmission(buec, atom, GeometryPhase.markovian(PI), 4 * PI)
    assert got == pytest.approx(expected, abs=1e-12)
    assert round(got, 3) == 0.987
    assert buec_reduced_transmission(buec, atom, 4 * PI) == pytest.approx(expected, abs=1e-12)


def test_resonant_requires_resonance(buec):
    with pytest.raises(ResonanceRequiredError):
        resonant_transmission(buec, AtomParams(0.0, 1.0), GeometryPhase.markovian(0.0), 0.3)


@given(couplings, drives, taus, thetas, detunings)
def test_resonant_formula_matches_amplitudes(coupling, drive, tau, theta, delta):
    atom = AtomParams(0.0, omega_drive=drive)
    geom = GeometryPhase.free(tau, theta)
    assert resonant_transmission(coupling, atom, geom, delta) == pytest.approx(
        amplitudes(coupling, atom, geom, delta).big_t, abs=1e-10)


@given(rates, rates, st.floats(0.01, 10.0))
def test_buec_total_reflection_at_drive(a, b, drive):
    assume(abs(a - b) > 1e-6)
    c = ChiralCoupling(a, b, b, a)
    atom = AtomParams(0.0, omega_drive=drive)
    assert buec_reduced_transmission(c, atom, drive) == 0.0
    assert buec_reduced_transmission(c, atom, -drive) == 0.0


@given(rates, detunings, drives)
def test_buec_reduced_fully_symmetric_transmits(a, delta, drive):
    c = ChiralCoupling(a, a, a, a)
    assert buec_reduced_transmission(c, AtomParams(0.0, omega_drive=drive), delta) == 1.0


def test_buec_reduced_rejects_other_regimes(bec):
    with pytest.raises(RegimeMismatchError):
        buec_reduced_transmission(bec, AtomParams(0.0), 1.0)


# --- classification and Markovianity ------------------------------------------

@pytest.mark.parametrize("rates_,regime", [
    ((1, 3, 1, 3), CouplingRegime.BEC),
    ((1, 3, 3, 1), CouplingRegime.BUEC),
    ((1, 2, 3, 4), CouplingRegime.GENERAL),
    ((1, 0.25, 1, 0.25), CouplingRegime.BEC),
    ((1, 0.25, 0.25, 1), CouplingRegime.BUEC),
])
def test_classify(rates_, regime):
    assert classify_coupling(ChiralCoupling(*rates_), 1e-9).regime is regime


def test_classify_symmetric_case():
    cls = classify_coupling(ChiralCoupling(2, 2, 2, 2))
    assert cls.regime is CouplingRegime.BEC
    assert cls.symmetric


def test_classify_needs_positive_tol(bec):
    with pytest.raises(InvalidInputError):
        classify_coupling(bec, 0.0)


@pytest.mark.parametrize("rates_,tau,expected", [
    ((1, 3, 1, 3), 0.0, 0.0),
    ((1, 0.25, 0.25, 1), 1.0, 2.5),
    ((1, 0.25, 0.25, 1), 2.5, 6.25),
])
def test_markovianity_ratio(rates_, tau, expected):
    ratio = markovianity_ratio(ChiralCoupling(*rates_), GeometryPhase.free(tau, 0.0))
    assert ratio == pytest.approx(expected, rel=1e-15)


# --- Markovian limit ----------------------------------------------------------

def test_markovian_dip_shift_at_quarter_phase(buec):
    amp = markovian_amplitudes(buec, AtomParams(0.0), PI / 2, 4 * math.sqrt(3))
    assert amp.big_t == pytest.approx(0.0, abs=1e-12)


def test_bec_half_phase_resonance_decouples(bec):
    amp = markovian_amplitudes(bec, AtomParams(0.0), PI, 0.0)
    assert amp.big_t == 1.0
    assert amp.decoupled


@given(couplings, st.floats(-5, 5), drives, thetas, detunings)
def test_markovian_is_zero_delay(coupling, offset, drive, theta, delta):
    atom = AtomParams(0.0, offset, drive)
    assert markovian_amplitudes(coupling, atom, theta, delta) == amplitudes(
        coupling, atom, GeometryPhase.free(0.0, theta), delta)


# --- invariants ---------------------------------------------------------------

@settings(max_examples=300)
@given(couplings, st.floats(-5, 5), drives, taus, thetas, detunings)
def test_unitarity(coupling, offset, drive, tau, theta, delta):
    amp = amplitudes(coupling, AtomParams(1.0, 1.0 + offset, drive),
                     GeometryPhase.free(tau, theta), delta)
    assert amp.big_t + amp.big_r == pytest.approx(1.0, abs=1e-10)
    assert -1e-12 <= amp.big_t <= 1 + 1e-12
    assert -1e-12 <= amp.big_r <= 1 + 1e-12


@given(couplings, st.floats(-5, 5), drives, taus, thetas, detunings)
def test_chirality_exchange(coupling, offset, drive, tau, theta, delta):
    atom = AtomParams(0.0, offset, drive)
    geom = GeometryPhase.free(tau, theta)
    a = amplitudes(coupling, atom, geom, delta)
    b = amplitudes(coupling.mirrored(), atom, geom, delta)
    assert abs(a.t) == pytest.approx(abs(b.t), abs=1e-12)
    assert abs(a.r) == pytest.approx(abs(b.r), abs=1e-12)


@given(rates, rates, drives, st.integers(-3, 3), detunings)
def test_bec_identity(a, b, drive, n, delta):
    atom = AtomParams(0.0, omega_drive=drive)
    geom = GeometryPhase.markovian((2 * n + 1) * PI)
    amp = amplitudes(ChiralCoupling(a, b, a, b), atom, geom, delta)
    assert amp.big_t == pytest.approx(1.0, abs=1e-10)
    for pole in (drive, -drive):
        assert amplitudes(ChiralCoupling(a, b, a, b), atom, geom, pole).decoupled


@given(rates, rates, st.floats(0.01, 10.0), st.integers(-3, 3))
def test_buec_reflects_at_drive(a, b, drive, n):
    assume(abs(math.sqrt(a) - math.sqrt(b)) > 1e-3)
    atom = AtomParams(0.0, omega_drive=drive)
    geom = GeometryPhase.markovian((2 * n + 1) * PI)
    for pole in (drive, -drive):
        assert amplitudes(ChiralCoupling(a, b, b, a), atom, geom, pole).big_t < 1e-10


@given(couplings, drives, st.sampled_from([0.0, PI, 2 * PI, 3 * PI]),
       st.floats(0.0, 30.0))
def test_mirror_symmetry_at_integer_pi(coupling, drive, theta, delta):
    atom = AtomParams(0.0, omega_drive=drive)
    geom = GeometryPhase.markovian(theta)
    t_pos = amplitudes(coupling, atom, geom, delta).big_t
    t_neg = amplitudes(coupling, atom, geom, -delta).big_t
    assert abs(t_pos - t_neg) < 1e-12


@given(couplings, st.floats(-5, 5), taus, thetas, detunings)
def test_two_level_reduction(coupling, omega_s, tau, theta, delta):
    geom = GeometryPhase.free(tau, theta)
    a = amplitudes(coupling, AtomParams(0.0, omega_s, 0.0), geom, delta)
    b = amplitudes(coupling, AtomParams(0.0, 0.0, 0.0), geom, delta)
    assert a == b
    # resonant T with Omega = 0 drops the Omega^2/delta term entirely
    assume(abs(delta) > 1e-6)
    g = coupling
    phi = delta * tau + theta
    sll, srr = math.sqrt(g.gamma_l1 * g.gamma_l2), math.sqrt(g.gamma_r1 * g.gamma_r2)
    re = delta - 2 * (sll + srr) * math.sin(phi)
    num = re ** 2 + (g.gamma_l1 + g.gamma_l2 - g.gamma_r1 - g.gamma_r2
                     + 2 * (sll - srr) * math.cos(phi)) ** 2
    den = re ** 2 + (g.total + 2 * (sll + srr) * math.cos(phi)) ** 2
    assume(den > 1e-6)
    assert resonant_transmission(coupling, AtomParams(0.0), geom, delta) == pytest.approx(
        num / den, abs=1e-12)


@given(couplings, st.floats(0.01, 10.0), taus, thetas)
def test_resonant_peak(coupling, drive, tau, theta):
    atom = AtomParams(0.0, omega_drive=drive)
    assert resonant_transmission(coupling, atom, GeometryPhase.free(tau, theta), 0.0) == 1.0
    assert amplitudes(coupling, atom, GeometryPhase.free(tau, theta), 0.0).big_t == pytest.approx(1.0)
