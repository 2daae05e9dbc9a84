"""Two-mode fermionic dynamics with self-adaptive inertia parameters.

The package covers four layers:

* ``algebra`` -- the 4x4 matrix realization of the two-mode fermionic
  operators and Fock states;
* ``exact`` -- closed-form Heisenberg evolution of the quadratic model;
* ``induced`` / ``generalized`` -- the stepwise rule-adapted dynamics and
  its continuous limit, which relax to asymptotic equilibria;
* ``equilibrium`` / ``lab`` -- trailing-window equilibrium detection,
  parameter sweeps, tanh fits, and the closed-form equilibrium laws.
"""

from .algebra import (
    ATOL,
    BASIS_LABELS,
    FockState,
    anticommutator,
    basis_index,
    build_operators,
    dagger,
    expectation,
    identity,
    number_operators,
)
from .equilibrium import (
    DEFAULT_AMP_TOL,
    DEFAULT_WINDOW,
    EquilibriumResult,
    detect_equilibrium,
)
from .errors import (
    DegenerateParametersError,
    FitNonConvergenceError,
    IntegrationUnstableError,
    NoRulePredictionError,
    ParameterCollapseError,
    UndefinedGapError,
)
from .exact import (
    ExactPropagator,
    ModelParams,
    build_hamiltonian,
    exact_mean_values,
    exact_operators,
    frequency_gap,
    oscillation_period,
)
from .generalized import (
    IntegratorConfig,
    OperatorFrames,
    coupling_term,
    effective_inertia,
    integrate_generalized,
    minimum_horizon,
    rhs,
)
from .induced import RuleSchedule, apply_rule, run_induced
from .lab import (
    SweepPoint,
    SweepSpec,
    TanhFit,
    TanhLaw,
    converged_points,
    default_integrator_config,
    default_omega2_grid,
    fit_c_vs_lambda,
    fit_tanh,
    predict_equilibrium,
    reduced_gap,
    sweep_equilibria,
)
from .trajectory import Trajectory

__version__ = "0.1.0"

__all__ = [
    "ATOL",
    "BASIS_LABELS",
    "DEFAULT_AMP_TOL",
    "DEFAULT_WINDOW",
    "DegenerateParametersError",
    "EquilibriumResult",
    "ExactPropagator",
    "FitNonConvergenceError",
    "FockState",
    "IntegrationUnstableError",
    "IntegratorConfig",
    "ModelParams",
    "NoRulePredictionError",
    "OperatorFrames",
    "ParameterCollapseError",
    "RuleSchedule",
    "SweepPoint",
    "SweepSpec",
    "TanhFit",
    "TanhLaw",
    "Trajectory",
    "UndefinedGapError",
    "anticommutator",
    "apply_rule",
    "basis_index",
    "build_hamiltonian",
    "build_operators",
    "converged_points",
    "coupling_term",
    "dagger",
    "default_integrator_config",
    "default_omega2_grid",
    "detect_equilibrium",
    "effective_inertia",
    "exact_mean_values",
    "exact_operators",
    "expectation",
    "fit_c_vs_lambda",
    "fit_tanh",
    "frequency_gap",
    "identity",
    "integrate_generalized",
    "minimum_horizon",
    "number_operators",
    "oscillation_period",
    "predict_equilibrium",
    "reduced_gap",
    "rhs",
    "run_induced",
    "sweep_equilibria",
]
