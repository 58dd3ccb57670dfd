"""Work statistics of localized unitaries acting on a thermal scalar field.

The package computes the characteristic function of the work probability
distribution produced by a spatially smeared, temporally switched unitary
kick on a relativistic scalar field in a thermal (or vacuum) state, inverts
it into a work density with a delta atom at W = 0, evaluates moments and
fluctuation-theorem checks, and cross-validates everything against an
independent discrete-mode simulation of the Ramsey interferometric
measurement protocol.
"""

from .charfn import (
    DEFAULT_MU_MAX,
    DEFAULT_MU_POINTS,
    Scenario,
    charfn_correction,
    charfn_delta_closed,
    charfn_delta_numeric,
    charfn_grid,
    charfn_kms,
    charfn_vacuum,
    default_k_max,
    sample_charfn,
)
from .distribution import WorkDistribution
from .errors import (
    ConfigError,
    ConvergenceError,
    FieldworkError,
    InconsistencyError,
    InvalidArgumentError,
    RegimeError,
)
from .field_model import (
    FieldSpec,
    SmearingProfile,
    SwitchingProfile,
    dispersion,
    smearing_ft,
    switching_ft,
    thermal_weight,
)
from .ramsey import (
    ConvergenceReport,
    ModeSet,
    QubitState,
    continuum_convergence,
    first_order_qubit_correction,
    simulate_delta_ramsey,
    simulate_perturbative_ramsey,
    tomography,
)
from .special_math import (
    CharFnGrid,
    QuadratureSpec,
    conjugate_w_grid,
    dawson,
    integrate_radial,
    invert_charfn,
)
from .workdist import (
    CrooksRow,
    MomentReport,
    SweepRow,
    crooks_check,
    delta_weight,
    distribution_from_charfn,
    localization_sweep,
    moments,
    work_density_analytic,
)

__version__ = "0.1.0"

__all__ = [
    "CharFnGrid",
    "ConfigError",
    "ConvergenceError",
    "ConvergenceReport",
    "CrooksRow",
    "DEFAULT_MU_MAX",
    "DEFAULT_MU_POINTS",
    "FieldSpec",
    "FieldworkError",
    "InconsistencyError",
    "InvalidArgumentError",
    "ModeSet",
    "MomentReport",
    "QuadratureSpec",
    "QubitState",
    "RegimeError",
    "Scenario",
    "SmearingProfile",
    "SweepRow",
    "SwitchingProfile",
    "WorkDistribution",
    "charfn_correction",
    "charfn_delta_closed",
    "charfn_delta_numeric",
    "charfn_grid",
    "charfn_kms",
    "charfn_vacuum",
    "conjugate_w_grid",
    "continuum_convergence",
    "crooks_check",
    "dawson",
    "default_k_max",
    "delta_weight",
    "dispersion",
    "distribution_from_charfn",
    "first_order_qubit_correction",
    "integrate_radial",
    "invert_charfn",
    "localization_sweep",
    "moments",
    "sample_charfn",
    "simulate_delta_ramsey",
    "simulate_perturbative_ramsey",
    "smearing_ft",
    "switching_ft",
    "thermal_weight",
    "tomography",
    "work_density_analytic",
]
