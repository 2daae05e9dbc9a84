"""Parameter sweeps, tanh fits, and closed-form equilibrium laws.

The sweep protocol fixes omega1 (default 1.0) and scans omega2 over a grid
(default 0.1 to 1.9 in steps of 0.05), simulating the self-adaptive dynamics
at each point and recording the detected equilibrium against
x = omega1 - omega2.  Converged sweeps are well described by

    f(x) = a + b * tanh(c * x),

fitted here by damped Gauss-Newton with the analytic Jacobian.  Across
interaction strengths the fitted steepness follows c ~ slope / lam, and the
idealized a = b = 1/2 limit gives the closed-form laws

    n1_eq = (1 - sign(alpha1 + alpha2) * tanh(mu)) / 2        (alpha1*alpha2 >= 0)
    n1_eq = (1 - sign(alpha1) * sign(omega1 - omega2) * tanh(mu)) / 2
                                                              (alpha1*alpha2 < 0)

with the reduced gap mu = (omega1 - omega2) / (2 * lam).  For opposite-sign
rule coefficients with equal inertias the motion stays periodic; the
predicted 1/2 is then the time average of the oscillation rather than a
fixed point, and the prediction is annotated accordingly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .equilibrium import DEFAULT_AMP_TOL, DEFAULT_WINDOW, detect_equilibrium
from .errors import (
    FitNonConvergenceError,
    NoRulePredictionError,
    UndefinedGapError,
)
from .exact import ModelParams
from .generalized import IntegratorConfig, integrate_generalized, minimum_horizon


def default_omega2_grid() -> np.ndarray:
    """The canonical sweep grid: 0.1 to 1.9, 37 points at spacing 0.05."""
    return np.linspace(0.1, 1.9, 37)


@dataclass(frozen=True)
class SweepSpec:
    """Sweep protocol: fixed omega1, an omega2 grid, and the rule setting."""

    lam: float
    alpha1: float
    alpha2: float
    omega1: float = 1.0
    omega2_grid: np.ndarray = field(default_factory=default_omega2_grid)
    n1: int = 1
    n2: int = 0

    def __post_init__(self):
        grid = np.asarray(self.omega2_grid, dtype=float)
        if grid.ndim != 1 or grid.size < 1:
            raise ValueError("omega2_grid must be a non-empty 1-d sequence")
        if np.any(grid <= 0):
            raise ValueError("omega2_grid values must be positive")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("omega2_grid must be strictly increasing")
        grid = grid.copy()
        grid.setflags(write=False)
        object.__setattr__(self, "omega2_grid", grid)
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lam must be positive, got {self.lam!r}")

    def params_at(self, omega2: float) -> ModelParams:
        return ModelParams(
            omega1=self.omega1,
            omega2=float(omega2),
            lam=self.lam,
            alpha1=self.alpha1,
            alpha2=self.alpha2,
            n1=self.n1,
            n2=self.n2,
        )


@dataclass(frozen=True)
class SweepPoint:
    """One sweep record: x = omega1 - omega2 plus the detected outcome.

    ``drift`` is the occupation-sum conservation error of the underlying
    run, kept as a cheap integration-quality diagnostic.
    """

    x: float
    omega2: float
    status: str
    n1_eq: float | None = None
    settle_time: float | None = None
    time_average: float | None = None
    message: str | None = None
    drift: float | None = None


@dataclass(frozen=True)
class TanhFit:
    """Fitted parameters of y = a + b * tanh(c * x) with residual statistics."""

    a: float
    b: float
    c: float
    rms_residual: float
    n_points: int

    def predict(self, x):
        return self.a + self.b * np.tanh(self.c * np.asarray(x, dtype=float))


@dataclass(frozen=True)
class TanhLaw:
    """Closed-form equilibrium prediction.

    ``law_variant`` is "unified" when alpha1 * alpha2 >= 0 and
    "opposite_sign" otherwise; ``periodic_case`` marks the equal-inertia
    opposite-sign point where the motion stays periodic and the predicted
    value is a time average.
    """

    mu: float
    predicted_n1_eq: float
    law_variant: str
    periodic_case: bool = False


def default_integrator_config(
    params: ModelParams, step: float = 1e-3, sample_stride: int = 100
) -> IntegratorConfig:
    """Integration settings sized to the dynamics class.

    Opposite-sign rule coefficients equilibrate slowly and get a 2000 time
    unit horizon; everything else gets 500.  The horizon is stretched when
    ten initial-gap periods need more room.
    """
    base = 2000.0 if params.alpha1 * params.alpha2 < 0 else 500.0
    horizon = max(base, math.ceil(minimum_horizon(params)))
    return IntegratorConfig(step=step, horizon=horizon, sample_stride=sample_stride)


# Horizon cap for the auto-escalation policy of sweep points.  Transients
# near the saturated branch decay slowly (the slower, the smaller lam); the
# worst canonical-grid case (lam = 0.05, |x| = 0.9) settles below 10000.
MAX_SWEEP_HORIZON = 16000.0


def _solve_point(args) -> SweepPoint:
    spec, omega2, config, amp_tol, window = args
    params = spec.params_at(omega2)
    x = spec.omega1 - float(omega2)
    if config is not None:
        configs = [config]
    else:
        # Escalate the horizon until the point converges (or the cap is
        # reached): saturated-branch transients outlive the default horizon.
        base = default_integrator_config(params)
        configs = [base]
        horizon = base.horizon
        while horizon < MAX_SWEEP_HORIZON:
            horizon = min(2.0 * horizon, MAX_SWEEP_HORIZON)
            configs.append(
                IntegratorConfig(
                    step=base.step, horizon=horizon,
                    sample_stride=base.sample_stride,
                )
            )
    result = None
    drift = None
    for cfg in configs:
        try:
            traj = integrate_generalized(params, cfg)
            result = detect_equilibrium(traj, amp_tol=amp_tol, window=window)
            drift = traj.occupation_drift()
        except Exception as err:  # recorded, never silently dropped
            return SweepPoint(
                x=x, omega2=float(omega2), status="error", message=str(err)
            )
        if result.converged:
            break
    return SweepPoint(
        x=x,
        omega2=float(omega2),
        status=result.status,
        n1_eq=result.n1_eq,
        settle_time=result.settle_time,
        time_average=result.time_average,
        drift=drift,
    )


def sweep_equilibria(
    spec: SweepSpec,
    config: IntegratorConfig | None = None,
    *,
    amp_tol: float = DEFAULT_AMP_TOL,
    window: float = DEFAULT_WINDOW,
    workers: int | None = None,
) -> list[SweepPoint]:
    """Simulate every grid point and return records ordered by x.

    Each record carries the detected equilibrium or its periodic /
    indeterminate / error status; failed points are recorded, never dropped.
    Points are independent, so ``workers`` > 1 fans them out across
    processes.
    """
    jobs = [(spec, omega2, config, amp_tol, window) for omega2 in spec.omega2_grid]
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_solve_point, jobs))
    else:
        points = [_solve_point(job) for job in jobs]
    points.sort(key=lambda p: p.x)
    return points


def converged_points(points: list[SweepPoint]) -> tuple[np.ndarray, np.ndarray]:
    """(x, n1_eq) arrays of the converged records only."""
    xs = [p.x for p in points if p.status == "converged"]
    ys = [p.n1_eq for p in points if p.status == "converged"]
    return np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)


def fit_tanh(
    points,
    *,
    c0: float | None = None,
    max_iter: int = 200,
    update_tol: float = 1e-10,
) -> TanhFit:
    """Least-squares fit of y = a + b * tanh(c * x) by damped Gauss-Newton.

    Parameters
    ----------
    points : iterable of (x, y) pairs
        At least five points whose x values span both signs.
    c0 : float, optional
        Initial steepness.  Sweep callers pass 1 / (2 * lam) (the asymptotic
        law); by default the central slope of the data is used.
    max_iter, update_tol
        The loop stops successfully when the damped update norm falls below
        ``update_tol``; exhausting ``max_iter`` raises
        FitNonConvergenceError with the last iterate attached.

    Returns
    -------
    TanhFit
        Canonicalized so c > 0 (the (b, c) -> (-b, -c) degeneracy is folded
        into the sign of b).
    """
    data = np.asarray([(float(x), float(y)) for x, y in points], dtype=float)
    if data.ndim != 2 or data.shape[0] < 5:
        raise ValueError("need at least 5 (x, y) points")
    x = data[:, 0]
    y = data[:, 1]
    if not (x.min() < 0.0 < x.max()):
        raise ValueError("x values must span both signs")

    a = float(y.mean())
    slope_sign = 1.0 if _central_slope(x, y) >= 0 else -1.0
    b = 0.5 * float(y.max() - y.min()) * slope_sign
    if b == 0.0:
        b = 1e-6 * slope_sign
    if c0 is None:
        c0 = abs(_central_slope(x, y) / b) if b != 0 else 1.0
    c = max(float(c0), 1e-6)

    p = np.array([a, b, c], dtype=float)
    sse = _tanh_sse(p, x, y)
    for iteration in range(max_iter):
        th = np.tanh(p[2] * x)
        resid = y - (p[0] + p[1] * th)
        jac = np.column_stack([np.ones_like(x), th, p[1] * x * (1.0 - th**2)])
        step_vec, *_ = np.linalg.lstsq(jac, resid, rcond=None)
        damping = 1.0
        while damping >= 1e-8:
            candidate = p + damping * step_vec
            cand_sse = _tanh_sse(candidate, x, y)
            if cand_sse <= sse:
                break
            damping *= 0.5
        else:
            # no improving damped step; treat the current update as final
            damping = 0.0
        if damping > 0.0:
            p = p + damping * step_vec
            sse = cand_sse
        if damping * float(np.linalg.norm(step_vec)) < update_tol:
            a, b, c = p
            if c < 0:
                b, c = -b, -c
            rms = math.sqrt(_tanh_sse(np.array([a, b, c]), x, y) / x.size)
            return TanhFit(
                a=float(a), b=float(b), c=float(c),
                rms_residual=rms, n_points=int(x.size),
            )
    raise FitNonConvergenceError(
        f"tanh fit did not converge in {max_iter} iterations",
        last_params=tuple(p),
        iterations=max_iter,
    )


def _central_slope(x: np.ndarray, y: np.ndarray) -> float:
    """Slope of a line through the four points closest to x = 0."""
    order = np.argsort(np.abs(x))[: max(2, min(4, x.size))]
    xs, ys = x[order], y[order]
    xm, ym = xs.mean(), ys.mean()
    denom = float(np.sum((xs - xm) ** 2))
    if denom == 0.0:
        return 0.0
    return float(np.sum((xs - xm) * (ys - ym)) / denom)


def _tanh_sse(p: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    resid = y - (p[0] + p[1] * np.tanh(p[2] * x))
    return float(np.dot(resid, resid))


def fit_c_vs_lambda(pairs) -> tuple[float, float]:
    """Single-parameter least-squares fit of c = slope / lam.

    ``pairs`` is an iterable of (lam, c) with at least five positive lam
    values (intended to span roughly [0.05, 1.0]).  Returns (slope, rms of
    the residuals c - slope / lam).
    """
    data = np.asarray([(float(l), float(c)) for l, c in pairs], dtype=float)
    if data.shape[0] < 5:
        raise ValueError("need at least 5 (lam, c) pairs")
    lam = data[:, 0]
    c = data[:, 1]
    if np.any(lam <= 0):
        raise ValueError("lam values must be positive")
    u = 1.0 / lam
    slope = float(np.dot(c, u) / np.dot(u, u))
    resid = c - slope * u
    rms = math.sqrt(float(np.dot(resid, resid)) / resid.size)
    return slope, rms


def reduced_gap(params: ModelParams) -> float:
    """The reduced gap mu = (omega1 - omega2) / (2 * lam).

    The frequency gap satisfies delta = 2 * lam * sqrt(mu^2 + 1).
    """
    if params.lam == 0:
        raise UndefinedGapError("reduced gap is undefined at lam = 0")
    return (params.omega1 - params.omega2) / (2.0 * params.lam)


def predict_equilibrium(params: ModelParams) -> TanhLaw:
    """Closed-form equilibrium prediction for the active rule.

    Selects the law variant by the sign of alpha1 * alpha2 and evaluates
    (1 - s * tanh(mu)) / 2 with the variant's sign factor s.  Requires
    lam > 0 and at least one nonzero rule coefficient.
    """
    if params.alpha1 == 0 and params.alpha2 == 0:
        raise NoRulePredictionError(
            "no rule is active (alpha1 == alpha2 == 0); nothing to predict"
        )
    if params.lam == 0:
        raise UndefinedGapError("prediction requires lam > 0")
    mu = reduced_gap(params)
    x = params.omega1 - params.omega2
    if params.alpha1 * params.alpha2 < 0:
        sign_factor = _sign(params.alpha1) * _sign(x)
        variant = "opposite_sign"
        periodic_case = x == 0.0
    else:
        sign_factor = _sign(params.alpha1 + params.alpha2)
        variant = "unified"
        periodic_case = False
    value = 0.5 * (1.0 - sign_factor * math.tanh(mu))
    return TanhLaw(
        mu=mu,
        predicted_n1_eq=value,
        law_variant=variant,
        periodic_case=periodic_case,
    )


def _sign(value: float) -> float:
    if value > 0:
        return 1.0
    if value < 0:
        return -1.0
    return 0.0
