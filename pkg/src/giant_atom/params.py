"""Parameter containers for the driven Lambda-type giant atom.

All energies and rates are expressed in units of a reference decay rate
(normally gamma_L1), with the waveguide group velocity set to one so that the
propagation time between coupling points equals their separation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import InvalidInputError

TWO_PI = 2.0 * math.pi


def _check_finite(name, value):
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")


def wrap_phase(theta: float) -> float:
    """Map an angle onto [0, 2*pi)."""
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


@dataclass(frozen=True)
class ChiralCoupling:
    """Left/right decay rates at the two coupling points.

    A rate gamma relates to the bare coupling strength g through
    gamma = g**2 / 2.
    """

    gamma_l1: float
    gamma_r1: float
    gamma_l2: float
    gamma_r2: float

    def __post_init__(self):
        for name in ("gamma_l1", "gamma_r1", "gamma_l2", "gamma_r2"):
            value = float(getattr(self, name))
            _check_finite(name, value)
            if value < 0.0:
                raise InvalidInputError(f"{name}: rate must be >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_strengths(cls, g_l1, g_r1, g_l2, g_r2) -> "ChiralCoupling":
        """Build from real coupling strengths g (sign is irrelevant)."""
        return cls(*(0.5 * g * g for g in (g_l1, g_r1, g_l2, g_r2)))

    @property
    def strengths(self) -> tuple[float, float, float, float]:
        """Coupling strengths (g_L1, g_R1, g_L2, g_R2), each sqrt(2 * gamma)."""
        return tuple(math.sqrt(2.0 * gam) for gam in self.as_tuple())

    @property
    def gamma_1(self) -> float:
        return self.gamma_l1 + self.gamma_r1

    @property
    def gamma_2(self) -> float:
        return self.gamma_l2 + self.gamma_r2

    @property
    def total(self) -> float:
        """Total decay rate summed over both points and both directions."""
        return self.gamma_1 + self.gamma_2

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.gamma_l1, self.gamma_r1, self.gamma_l2, self.gamma_r2)

    def mirrored(self) -> "ChiralCoupling":
        """Swap the roles of left- and right-moving modes at both points."""
        return ChiralCoupling(self.gamma_r1, self.gamma_l1, self.gamma_r2, self.gamma_l2)

    def scaled(self, factor: float) -> "ChiralCoupling":
        return ChiralCoupling(*(factor * gam for gam in self.as_tuple()))


@dataclass(frozen=True)
class AtomParams:
    """Level energies of |e> and |s> and the classical drive strength.

    ``omega_s`` defaults to ``omega_e`` (two-photon resonance).
    """

    omega_e: float
    omega_s: float | None = None
    omega_drive: float = 0.0

    def __post_init__(self):
        if self.omega_s is None:
            object.__setattr__(self, "omega_s", self.omega_e)
        for name in ("omega_e", "omega_s", "omega_drive"):
            value = float(getattr(self, name))
            _check_finite(name, value)
            object.__setattr__(self, name, value)
        if self.omega_drive < 0.0:
            raise InvalidInputError(f"omega_drive must be >= 0, got {self.omega_drive!r}")

    @property
    def resonant(self) -> bool:
        return self.omega_s == self.omega_e

    def with_drive(self, omega_drive: float) -> "AtomParams":
        return AtomParams(self.omega_e, self.omega_s, omega_drive)


class ThetaMode(enum.Enum):
    FREE = "free"
    DERIVED_FROM_OMEGA_E = "derived"


@dataclass(frozen=True)
class GeometryPhase:
    """Propagation delay between the coupling points and the static phase.

    The phase accumulated between the two points at detuning ``delta`` is
    ``delta * tau + theta``.  In ``DERIVED_FROM_OMEGA_E`` mode ``theta`` is
    ``omega_e * tau`` reduced mod 2*pi; use :meth:`derived` to build one.
    """

    tau: float = 0.0
    theta: float = 0.0
    theta_mode: ThetaMode = ThetaMode.FREE
    omega_e: float | None = field(default=None, compare=False)

    def __post_init__(self):
        tau = float(self.tau)
        _check_finite("tau", tau)
        if tau < 0.0:
            raise InvalidInputError(f"tau must be >= 0, got {tau!r}")
        object.__setattr__(self, "tau", tau)
        if self.theta_mode is ThetaMode.DERIVED_FROM_OMEGA_E:
            if self.omega_e is None:
                raise InvalidInputError("derived theta mode needs omega_e")
            _check_finite("omega_e", self.omega_e)
            object.__setattr__(self, "theta", wrap_phase(self.omega_e * tau))
        else:
            theta = float(self.theta)
            _check_finite("theta", theta)
            object.__setattr__(self, "theta", wrap_phase(theta))

    @classmethod
    def free(cls, tau: float, theta: float) -> "GeometryPhase":
        return cls(tau=tau, theta=theta)

    @classmethod
    def derived(cls, omega_e: float, tau: float) -> "GeometryPhase":
        return cls(tau=tau, theta_mode=ThetaMode.DERIVED_FROM_OMEGA_E, omega_e=omega_e)

    @classmethod
    def markovian(cls, theta: float) -> "GeometryPhase":
        """Zero delay: the accumulated phase is theta at every detuning."""
        return cls(tau=0.0, theta=theta)

    def phase(self, delta):
        """Accumulated phase delta*tau + theta (works on arrays)."""
        return delta * self.tau + self.theta

    @property
    def unreduced_phase(self) -> float:
        """Size of the static phase before reduction mod 2*pi.

        Sets the absolute rounding error carried by ``theta``.
        """
        if self.theta_mode is ThetaMode.DERIVED_FROM_OMEGA_E:
            return abs(self.omega_e * self.tau)
        return TWO_PI


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Transmission and reflection amplitudes at one detuning.

    ``decoupled`` marks a removable 0/0 point resolved by continuity to
    t = 1, r = 0.
    """

    t: complex
    r: complex
    decoupled: bool = False

    @property
    def big_t(self) -> float:
        return abs(self.t) ** 2

    @property
    def big_r(self) -> float:
        return abs(self.r) ** 2


class CouplingRegime(enum.Enum):
    BEC = "BEC"
    BUEC = "BUEC"
    GENERAL = "General"


@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify_coupling`.

    ``symmetric`` is set when the coupling satisfies both the BEC and the BUEC
    equalities (all four rates equal within ``tol``).
    """

    regime: CouplingRegime
    tol: float
    symmetric: bool = False
