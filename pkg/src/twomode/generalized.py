"""Continuous-limit self-adaptive dynamics of the two-mode model.

Taking the rule interval of the stepwise dynamics to zero turns the
occupation increments into instantaneous rates, so the inertia parameters
become state-dependent:

    omega1(t) = omega1_0 * (1 + alpha1 * dn1/dt),
    omega2(t) = omega2_0 * (1 + alpha2 * dn2/dt).

Along the evolution dn1/dt = lam * Im C(t) = -dn2/dt, where

    C(t) = <phi, (a1(t)^+ a2(t) - a2(t)^+ a1(t)) phi>

is the (purely imaginary) coupling expectation on the fixed initial basis
state.  Substituting the rates gives the closed nonlinear operator system

    da1/dt = -i (omega1_0 (1 + alpha1 lam Im C) a1 + lam a2),
    da2/dt = -i (omega2_0 (1 - alpha2 lam Im C) a2 + lam a1),

whose instantaneous generator is the Hermitian two-mode Hamiltonian with the
effective (real) inertia coefficients: anticommutation relations and
n1 + n2 are preserved.  At alpha1 = alpha2 = 0 the system reduces to the
plain linear dynamics.  The trajectory must be produced by integrating this
system directly; propagating with a frozen generator would miss the state
dependence.

The integrator is classical fixed-step RK4 on the stacked pair of 4x4
complex matrices (32 real dimensions), with the coupling expectation
recomputed at every stage.  Fixed stepping keeps runs bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _rk4
from .algebra import FockState, build_operators
from .errors import DegenerateParametersError, IntegrationUnstableError
from .exact import ModelParams, frequency_gap
from .trajectory import Trajectory

TWO_PI = 2.0 * math.pi

# Minimum number of initial-gap periods an integration horizon must cover.
MIN_PERIODS = 10.0


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings: step size, horizon, and sample stride."""

    step: float = 1e-3
    horizon: float = 500.0
    sample_stride: int = 100

    def __post_init__(self):
        if not (math.isfinite(self.step) and 0 < self.step <= 0.05):
            raise ValueError(f"step must lie in (0, 0.05], got {self.step!r}")
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise ValueError(f"horizon must be positive, got {self.horizon!r}")
        if not (isinstance(self.sample_stride, int) and self.sample_stride >= 1):
            raise ValueError(
                f"sample_stride must be a positive integer, got {self.sample_stride!r}"
            )


@dataclass(frozen=True)
class OperatorFrames:
    """Operator matrices recorded at the sample times of a run."""

    times: np.ndarray
    a1: np.ndarray
    a2: np.ndarray


def coupling_term(a1: np.ndarray, a2: np.ndarray, state: FockState) -> complex:
    """The coupling expectation <phi, (a1^+ a2 - a2^+ a1) phi>.

    The observable is anti-Hermitian, so the value is purely imaginary for
    any unit state; its imaginary part is proportional to dn1/dt.
    """
    v = state.coefficients
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    u1 = a1 @ v
    u2 = a2 @ v
    return complex(np.vdot(u1, u2) - np.vdot(u2, u1))


def effective_inertia(
    a1: np.ndarray, a2: np.ndarray, params: ModelParams, state: FockState
) -> tuple[float, float]:
    """Instantaneous effective inertia coefficients (both real)."""
    cim = coupling_term(a1, a2, state).imag
    w1 = params.omega1 * (1.0 + params.alpha1 * params.lam * cim)
    w2 = params.omega2 * (1.0 - params.alpha2 * params.lam * cim)
    return w1, w2


def rhs(
    a1: np.ndarray, a2: np.ndarray, params: ModelParams, state: FockState
) -> tuple[np.ndarray, np.ndarray]:
    """Instantaneous derivatives (da1/dt, da2/dt) of the adaptive system."""
    w1, w2 = effective_inertia(a1, a2, params, state)
    d1 = -1j * (w1 * a1 + params.lam * a2)
    d2 = -1j * (w2 * a2 + params.lam * a1)
    return d1, d2


def minimum_horizon(params: ModelParams) -> float:
    """Smallest admissible horizon: MIN_PERIODS initial-gap periods."""
    delta0 = frequency_gap(params.omega1, params.omega2, params.lam)
    if delta0 == 0.0:
        raise DegenerateParametersError(
            "frequency gap is zero (omega1 == omega2 and lam == 0)"
        )
    return MIN_PERIODS * TWO_PI / delta0


def integrate_generalized(
    params: ModelParams,
    config: IntegratorConfig | None = None,
    *,
    record_operators: bool = False,
):
    """Integrate the self-adaptive operator system from the built operators.

    Parameters
    ----------
    params : ModelParams
        Initial inertias, interaction strength, rule coefficients, and the
        initial basis state.
    config : IntegratorConfig, optional
        Step, horizon, and sampling stride.  The horizon must cover at least
        ``MIN_PERIODS`` periods of the initial-parameter oscillation.
    record_operators : bool
        When True, also return the operator matrices at the sample times as
        an OperatorFrames instance.

    Returns
    -------
    Trajectory, or (Trajectory, OperatorFrames) when record_operators is set.
        The omega columns hold the effective inertias and coupling_im the
        imaginary part of the coupling expectation at each sample.

    Raises
    ------
    IntegrationUnstableError
        If any operator entry grows beyond the stability bound; the partial
        trajectory is attached.
    """
    if config is None:
        config = IntegratorConfig()
    min_h = minimum_horizon(params)
    if config.horizon < min_h:
        raise ValueError(
            f"horizon {config.horizon!r} is below the minimum {min_h:.3f} "
            f"(10 initial-gap periods) for these parameters"
        )
    n_steps = max(1, round(config.horizon / config.step))
    a1, a2 = build_operators()
    v = params.initial_state().coefficients.astype(np.complex128)

    status, n_rec, times, n1, n2, w1, w2, cim, frames1, frames2 = _rk4.integrate_pair(
        a1,
        a2,
        v,
        float(params.omega1),
        float(params.omega2),
        float(params.lam),
        float(params.alpha1),
        float(params.alpha2),
        float(config.step),
        int(n_steps),
        int(config.sample_stride),
    )
    traj = Trajectory(
        times=times[:n_rec].copy(),
        n1=n1[:n_rec].copy(),
        n2=n2[:n_rec].copy(),
        omega1_eff=w1[:n_rec].copy(),
        omega2_eff=w2[:n_rec].copy(),
        coupling_im=cim[:n_rec].copy(),
    )
    if status != _rk4.STATUS_OK:
        raise IntegrationUnstableError(
            f"integration unstable near t = {traj.times[-1]:.6g} "
            f"(operator entry above {_rk4.ENTRY_LIMIT:g})",
            time=float(traj.times[-1]),
            partial=traj,
        )
    if record_operators:
        frames = OperatorFrames(
            times=traj.times.copy(),
            a1=frames1[:n_rec].copy(),
            a2=frames2[:n_rec].copy(),
        )
        return traj, frames
    return traj


def warm_up() -> None:
    """Compile the integration kernel on a tiny run (idempotent)."""
    params = ModelParams(omega1=1.0, omega2=2.0, lam=0.5)
    config = IntegratorConfig(step=0.05, horizon=45.0, sample_stride=100)
    integrate_generalized(params, config)
