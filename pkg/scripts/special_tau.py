"""Delays that place decoupling / total reflection at Delta = +Omega, -Omega or both.

With theta tied to omega_e * tau, lists the special delays in a window and
writes spectra plus the located special points at three representative delays.
"""

import math

from giant_atom import (AtomParams, ChiralCoupling, GeometryPhase, SpecialKind, SweepGrid,
                        find_special_points, sweep_spectrum)
from giant_atom.spectral import special_tau_window

from _common import out_dir, write_csv

PI = math.pi
OMEGA_E = 3000 * PI
OMEGA = 3 * PI
COUPLINGS = {
    "bec": (ChiralCoupling(1, 0.25, 1, 0.25), SpecialKind.DECOUPLING),
    "buec": (ChiralCoupling(1, 0.25, 0.25, 1), SpecialKind.PERFECT_REFLECTION),
}


def main():
    out = out_dir(__doc__.splitlines()[0])
    rows = []
    for sign in ("plus", "minus"):
        rows += [(sign, order, tau) for order, tau in special_tau_window(OMEGA_E, OMEGA, sign, 1.4, 1.9)]
    write_csv(out / "special_tau_window.csv", ["sign", "order", "tau"], rows)

    atom = AtomParams(OMEGA_E, omega_drive=OMEGA)
    grid = SweepGrid(-20, 20, 4001)
    spectra, points = [], []
    for label, tau in (("13/7", 13 / 7), ("13/9", 13 / 9), ("5/3", 5 / 3)):
        geom = GeometryPhase.derived(OMEGA_E, tau)
        for cname, (c, kind) in COUPLINGS.items():
            s = sweep_spectrum(c, atom, geom, grid)
            spectra += [(label, cname, float(d), float(t)) for d, t in zip(s.delta, s.T)]
            for p in find_special_points(c, atom, geom, (-20, 20), kind):
                points.append((label, cname, p.kind.value, p.delta, p.value))
    write_csv(out / "special_tau_spectra.csv", ["tau", "coupling", "delta", "T"], spectra)
    write_csv(out / "special_tau_points.csv", ["tau", "coupling", "kind", "delta", "T"], points)


if __name__ == "__main__":
    main()
