"""Single-photon scattering off a driven Lambda-type giant atom chirally
coupled at two points to a one-dimensional waveguide."""

from .errors import (
    CountMismatchError,
    GiantAtomError,
    InvalidGridError,
    InvalidInputError,
    NumericalError,
    NumericalSingularityError,
    RegimeMismatchError,
    ResonanceRequiredError,
)
from .oracle import ScatteringState, residual_norm, solve_scattering_linear_system
from .params import (
    AtomParams,
    ChiralCoupling,
    Classification,
    CouplingRegime,
    GeometryPhase,
    ScatteringAmplitudes,
    ThetaMode,
)
from .scattering import (
    amplitude_arrays,
    amplitudes,
    buec_reduced_transmission,
    classify_coupling,
    markovian_amplitudes,
    markovianity_ratio,
    resonant_transmission,
    transmission,
)
from .spectral import (
    DriveSign,
    SpecialKind,
    SpecialPoint,
    SweepGrid,
    dip_separation,
    find_special_points,
    heatmap_delta_omega,
    special_tau_solutions,
    sweep_spectrum,
    symmetry_defect,
)

__version__ = "0.1.0"
