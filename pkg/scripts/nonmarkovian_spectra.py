"""Transmission spectra with a finite delay between the coupling points.

Sweeps tau for the chirality-exchanged coupling at theta = pi and counts the
local minima of T as a measure of the delay-induced oscillations.
"""

import math

from giant_atom import AtomParams, ChiralCoupling, GeometryPhase, SweepGrid, sweep_spectrum
from giant_atom.spectral import count_local_minima

from _common import out_dir, write_csv

PI = math.pi
TAUS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5)


def main():
    out = out_dir(__doc__.splitlines()[0])
    c = ChiralCoupling(1, 0.25, 0.25, 1)
    grid = SweepGrid(-20, 20, 4001)
    rows, counts = [], []
    for tau in TAUS:
        for omega in (0.0, 3 * PI):
            s = sweep_spectrum(c, AtomParams(0.0, omega_drive=omega), GeometryPhase.free(tau, PI), grid)
            rows += [(tau, omega, float(d), float(t)) for d, t in zip(s.delta, s.T)]
            counts.append((tau, omega, count_local_minima(s.T)))
    write_csv(out / "nonmarkov_spectra.csv", ["tau", "omega", "delta", "T"], rows)
    write_csv(out / "nonmarkov_minima.csv", ["tau", "omega", "local_minima"], counts)


if __name__ == "__main__":
    main()
