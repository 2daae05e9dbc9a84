"""Stepwise rule-adapted dynamics: exact evolution glued across rule updates.

The simulated horizon [0, T] is split into n = T / tau subintervals.  Inside
each one the operators evolve under the closed-form solution with the
subinterval's frozen (omega1, omega2); at every junction k*tau the rule

    omega1 <- omega1 * (1 + n1(k tau) - n1((k-1) tau)),
    omega2 <- omega2 * (1 + n2(k tau) - n2((k-1) tau)),

rescales the inertia parameters by the observed occupation change.  The
operator state carries over across junctions (the evolution continues, it is
never restarted), so the mean occupations are continuous and only their time
derivatives may jump.  Because n1 + n2 is conserved, the two rule increments
always cancel and the inertia parameters move in opposite directions.

The rule increments are read from the simulated mean values at the junction
times, not from the one-subinterval closed form, so the runner stays correct
for carried-over operator combinations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import build_operators
from .errors import ParameterCollapseError
from .exact import ExactPropagator, ModelParams
from .trajectory import Trajectory

# Tolerance on the conservation precondition delta1 + delta2 == 0.
_DELTA_SUM_TOL = 1e-9


@dataclass(frozen=True)
class RuleSchedule:
    """Rule interval, total horizon, and output sampling for a stepwise run.

    The horizon must be an integer multiple of tau (the rule fires at every
    junction k*tau inside the horizon).  ``sample_step`` defaults to tau / 50
    and is coerced to an exact divisor of tau so junction times are sampled.
    """

    tau: float
    horizon: float
    sample_step: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise ValueError(f"horizon must be positive, got {self.horizon!r}")
        ratio = self.horizon / self.tau
        n = round(ratio)
        if n < 1 or abs(ratio - n) > 1e-9 * max(1.0, ratio):
            raise ValueError(
                f"horizon must be an integer multiple of tau "
                f"(horizon/tau = {ratio!r})"
            )
        step = self.sample_step if self.sample_step is not None else self.tau / 50.0
        if not (math.isfinite(step) and 0 < step <= self.tau):
            raise ValueError(
                f"sample_step must lie in (0, tau], got {step!r}"
            )
        # coerce to an exact divisor of tau so junctions land on samples
        step = self.tau / max(1, round(self.tau / step))
        object.__setattr__(self, "sample_step", step)

    @property
    def n_intervals(self) -> int:
        return round(self.horizon / self.tau)

    @property
    def samples_per_interval(self) -> int:
        return max(1, round(self.tau / self.sample_step))


def apply_rule(
    omega1: float, omega2: float, delta1: float, delta2: float
) -> tuple[float, float]:
    """One rule update: (omega1 (1 + delta1), omega2 (1 + delta2)).

    The increments must cancel (conservation of n1 + n2); an update that
    would produce a non-positive inertia raises ParameterCollapseError.
    """
    for name, value in (
        ("omega1", omega1),
        ("omega2", omega2),
        ("delta1", delta1),
        ("delta2", delta2),
    ):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    if abs(delta1 + delta2) > _DELTA_SUM_TOL:
        raise ValueError(
            f"rule increments must cancel, got delta1 + delta2 = {delta1 + delta2!r}"
        )
    new1 = omega1 * (1.0 + delta1)
    new2 = omega2 * (1.0 + delta2)
    if new1 <= 0.0 or new2 <= 0.0:
        raise ParameterCollapseError(
            f"rule update drives an inertia parameter non-positive: "
            f"({new1!r}, {new2!r})"
        )
    return new1, new2


def run_induced(params: ModelParams, schedule: RuleSchedule) -> Trajectory:
    """Run the stepwise rule-adapted dynamics and sample the mean occupations.

    Parameters
    ----------
    params : ModelParams
        Initial inertia parameters, interaction strength, and the initial
        basis state.  The rule coefficients alpha1/alpha2 are not used here;
        the stepwise rule always applies the raw occupation increments.
    schedule : RuleSchedule
        Rule interval, horizon, and sampling resolution.

    Returns
    -------
    Trajectory
        Sample times include t = 0 and every junction.  The omega columns
        hold the stepwise-constant inertia governing the evolution up to
        each sample; the coupling column is identically zero here.

    Raises
    ------
    ParameterCollapseError
        If a rule update would drive an inertia non-positive.  The partial
        trajectory accumulated so far is attached to the exception.
    """
    a1, a2 = build_operators()
    v = params.initial_state().coefficients
    omega1, omega2 = params.omega1, params.omega2
    lam = params.lam

    m = schedule.samples_per_interval
    h = schedule.tau / m
    offsets = np.arange(1, m + 1) * h

    n1_0 = float(np.vdot(a1 @ v, a1 @ v).real)
    n2_0 = float(np.vdot(a2 @ v, a2 @ v).real)
    times = [np.array([0.0])]
    n1_parts = [np.array([n1_0])]
    n2_parts = [np.array([n2_0])]
    om1_parts = [np.array([omega1])]
    om2_parts = [np.array([omega2])]
    prev_n1, prev_n2 = n1_0, n2_0

    for k in range(schedule.n_intervals):
        t0 = k * schedule.tau
        prop = ExactPropagator(omega1, omega2, lam)
        p11, p12, p21, p22 = prop.coefficients(offsets)

        b1 = a1 @ v
        b2 = a2 @ v
        g11 = float(np.vdot(b1, b1).real)
        g22 = float(np.vdot(b2, b2).real)
        g12 = complex(np.vdot(b1, b2))
        n1_arr = (
            np.abs(p11) ** 2 * g11
            + np.abs(p12) ** 2 * g22
            + 2.0 * (np.conj(p11) * p12 * g12).real
        )
        n2_arr = (
            np.abs(p21) ** 2 * g11
            + np.abs(p22) ** 2 * g22
            + 2.0 * (np.conj(p21) * p22 * g12).real
        )
        times.append(t0 + offsets)
        n1_parts.append(n1_arr)
        n2_parts.append(n2_arr)
        om1_parts.append(np.full(m, omega1))
        om2_parts.append(np.full(m, omega2))

        # Carry the operator state across the junction, then apply the rule.
        q11, q12, q21, q22 = prop.coefficients(schedule.tau)
        a1, a2 = q11 * a1 + q12 * a2, q21 * a1 + q22 * a2
        junction_n1 = float(n1_arr[-1])
        junction_n2 = float(n2_arr[-1])
        if k < schedule.n_intervals - 1:
            d1 = junction_n1 - prev_n1
            d2 = junction_n2 - prev_n2
            try:
                omega1, omega2 = apply_rule(omega1, omega2, d1, d2)
            except ParameterCollapseError as err:
                err.partial = _assemble(
                    times, n1_parts, n2_parts, om1_parts, om2_parts
                )
                raise
        prev_n1, prev_n2 = junction_n1, junction_n2

    return _assemble(times, n1_parts, n2_parts, om1_parts, om2_parts)


def _assemble(times, n1_parts, n2_parts, om1_parts, om2_parts) -> Trajectory:
    t = np.concatenate(times)
    return Trajectory(
        times=t,
        n1=np.concatenate(n1_parts),
        n2=np.concatenate(n2_parts),
        omega1_eff=np.concatenate(om1_parts),
        omega2_eff=np.concatenate(om2_parts),
        coupling_im=np.zeros_like(t),
    )
