"""Randomised cross-check of the closed-form amplitudes against the oracle."""

from __future__ import annotations

from dataclasses import dataclass

from .oracle import random_draws, solve_scattering_linear_system
from .scattering import amplitudes


@dataclass(frozen=True)
class VerifyReport:
    draws: int
    seed: int
    max_t_deviation: float
    max_abs_r_deviation: float
    max_unitarity_closed: float
    max_unitarity_oracle: float
    singular_draws: int

    def passed(self, amp_tol: float = 1e-9, unitarity_tol: float = 1e-10) -> bool:
        return (self.max_t_deviation < amp_tol
                and self.max_abs_r_deviation < amp_tol
                and self.max_unitarity_closed < unitarity_tol
                and self.max_unitarity_oracle < unitarity_tol)


def compare_random_draws(n: int = 10_000, seed: int = 42) -> VerifyReport:
    """Evaluate both routes on ``n`` seeded draws and report worst deviations.

    Singular oracle draws (decoupling points) are counted and excluded from the
    oracle unitarity maximum.
    """
    dt = dr = uc = uo = 0.0
    singular = 0
    for d in random_draws(n, seed):
        closed = amplitudes(d.coupling, d.atom, d.geom, d.delta)
        ref = solve_scattering_linear_system(d.coupling, d.atom, d.geom, d.delta)
        dt = max(dt, abs(closed.t - ref.t))
        dr = max(dr, abs(abs(closed.r) - abs(ref.r)))
        uc = max(uc, abs(closed.big_t + closed.big_r - 1.0))
        if ref.singular:
            singular += 1
        else:
            uo = max(uo, abs(ref.big_t + ref.big_r - 1.0))
    return VerifyReport(n, seed, dt, dr, uc, uo, singular)
