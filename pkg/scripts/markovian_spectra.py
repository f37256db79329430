"""Markovian transmission spectra and the Delta x Omega map.

Writes one spectrum per (coupling, theta, Omega) combination, the T(Delta,
Omega) map for the chirality-exchanged coupling and the dip separation as a
function of the drive.
"""

import math

import numpy as np

from giant_atom import (AtomParams, ChiralCoupling, GeometryPhase, SweepGrid, dip_separation,
                        heatmap_delta_omega, sweep_spectrum)

from _common import out_dir, write_csv

PI = math.pi
COUPLINGS = {"buec": ChiralCoupling(1, 3, 3, 1), "bec": ChiralCoupling(1, 3, 1, 3)}
THETAS = {"0": 0.0, "pi2": PI / 2, "pi": PI}


def main():
    out = out_dir(__doc__.splitlines()[0])
    grid = SweepGrid(-4 * PI, 4 * PI, 1001)
    for cname, c in COUPLINGS.items():
        for tname, theta in THETAS.items():
            rows = []
            for omega in (0.0, 2 * PI):
                s = sweep_spectrum(c, AtomParams(0.0, omega_drive=omega),
                                   GeometryPhase.markovian(theta), grid)
                rows += [(omega, float(d), float(t), float(r)) for d, t, r in zip(s.delta, s.T, s.R)]
            write_csv(out / f"markov_{cname}_theta{tname}.csv", ["omega", "delta", "T", "R"], rows)

    hm = heatmap_delta_omega(COUPLINGS["buec"], AtomParams(0.0), GeometryPhase.markovian(0.0),
                             SweepGrid(-4 * PI, 4 * PI, 401, 0.0, 4 * PI, 101))
    write_csv(out / "markov_buec_heatmap.csv", ["delta", "omega", "T"], hm.rows())

    rows = []
    for omega in np.geomspace(0.1, 100, 31):
        b = 2 * omega + 10
        sep = dip_separation(COUPLINGS["buec"], AtomParams(0.0, omega_drive=float(omega)),
                             GeometryPhase.markovian(0.0), (-b, b))
        rows.append((float(omega), sep, sep - 2 * omega))
    write_csv(out / "dip_separation.csv", ["omega", "separation", "separation_minus_2omega"], rows)


if __name__ == "__main__":
    main()
