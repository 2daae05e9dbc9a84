"""Shared fixtures: kernel warmup, cached heavy runs, acceptance reporting."""

from __future__ import annotations

import time

import pytest

from twomode import (
    IntegratorConfig,
    ModelParams,
    RuleSchedule,
    SweepSpec,
    detect_equilibrium,
    fit_tanh,
    converged_points,
    integrate_generalized,
    run_induced,
    sweep_equilibria,
)
from twomode.generalized import warm_up

SWEEP_WORKERS = 2

# Baseline inertia pair used throughout the reference tables and figures.
BASE_OMEGA = (0.5, 0.7)

# Reference asymptotic equilibria of n1 for omega = (0.5, 0.7), keyed by
# (alpha1, alpha2) and lam.
TABLE1 = {
    (0, -1): {0.1: 0.1468, 0.2: 0.2771, 0.3: 0.3432},
    (-1, 0): {0.1: 0.1466, 0.2: 0.2768, 0.3: 0.3424},
    (0, 1): {0.1: 0.8535, 0.2: 0.7236, 0.3: 0.6581},
    (1, 0): {0.1: 0.8535, 0.2: 0.7236, 0.3: 0.6581},
    (-1, -1): {0.1: 0.1466, 0.2: 0.2769, 0.3: 0.3425},
    (1, 1): {0.1: 0.8535, 0.2: 0.7236, 0.3: 0.6581},
    (-1, 1): {0.1: 0.8536, 0.2: 0.7236, 0.3: 0.6581},
    (1, -1): {0.1: 0.1468, 0.2: 0.2771, 0.3: 0.3431},
}

# Reference (a, b, c) rows of the tanh fit f(x) = a + b tanh(c x) per lam,
# from sweeps with alpha = (0, -1).
TABLE2 = {
    0.05: (0.5012, 0.4903, 8.9566),
    0.1: (0.5013, 0.4793, 4.7420),
    0.15: (0.5014, 0.4688, 3.3296),
    0.2: (0.5015, 0.4595, 2.6037),
    0.25: (0.5015, 0.4515, 2.1494),
    0.3: (0.5016, 0.4457, 1.8292),
    0.35: (0.5018, 0.4395, 1.6031),
    0.4: (0.5017, 0.4354, 1.4215),
    0.45: (0.5017, 0.4310, 1.2816),
    0.5: (0.5019, 0.4251, 1.1761),
    0.55: (0.5021, 0.4231, 1.0733),
    0.6: (0.5020, 0.4229, 0.9832),
    0.65: (0.5022, 0.4222, 0.9092),
    0.7: (0.5024, 0.4167, 0.8582),
    0.75: (0.5024, 0.4147, 0.8062),
    0.8: (0.5018, 0.4154, 0.7516),
    0.85: (0.5021, 0.4140, 0.7116),
    0.9: (0.5022, 0.4047, 0.6904),
    0.95: (0.5023, 0.4053, 0.6534),
    1.0: (0.5024, 0.4168, 0.6013),
}

TABLE1_STEP = 1e-3
# All reference-table runs share one extended horizon: the slowest rows
# ((-1, 0) at lam = 0.1 and the opposite-sign pairs) settle well past 500.
TABLE1_HORIZON = 2000.0

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_report():
    """Record one visible pass/fail line per acceptance criterion."""

    def _record(number: int, description: str, passed: bool, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:02d} [{status}] {description}"
        if detail:
            line += f" -- {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def warm_kernel():
    """Compile the integration kernel once, outside any timed block."""
    warm_up()
    return True


def _run_table1(step: float) -> dict:
    runs = {}
    start = time.perf_counter()
    stride = max(1, round(0.1 / step))
    for alpha, row in TABLE1.items():
        for lam in row:
            params = ModelParams(
                BASE_OMEGA[0], BASE_OMEGA[1], lam,
                alpha1=alpha[0], alpha2=alpha[1],
            )
            traj = integrate_generalized(
                params,
                IntegratorConfig(step=step, horizon=TABLE1_HORIZON,
                                 sample_stride=stride),
            )
            runs[(alpha, lam)] = {
                "result": detect_equilibrium(traj),
                "drift": traj.occupation_drift(),
            }
    return {"runs": runs, "elapsed": time.perf_counter() - start, "step": step}


@pytest.fixture(scope="session")
def table1_runs(warm_kernel):
    """All reference-table equilibria at the production step."""
    return _run_table1(TABLE1_STEP)


@pytest.fixture(scope="session")
def table1_runs_half_step(warm_kernel):
    """The same runs at half the step, for the integrator-order check."""
    return _run_table1(TABLE1_STEP / 2.0)


@pytest.fixture(scope="session")
def sweep_cache(warm_kernel):
    """Lazily computed, session-cached equilibrium sweeps keyed by
    (lam, alpha1, alpha2)."""
    cache: dict = {}

    def _get(lam: float, alpha1: float, alpha2: float):
        key = (lam, alpha1, alpha2)
        if key not in cache:
            start = time.perf_counter()
            points = sweep_equilibria(
                SweepSpec(lam=lam, alpha1=alpha1, alpha2=alpha2),
                workers=SWEEP_WORKERS,
            )
            cache[key] = {
                "points": points,
                "elapsed": time.perf_counter() - start,
            }
        return cache[key]

    _get.cache = cache
    return _get


@pytest.fixture(scope="session")
def lam_fit_table(sweep_cache):
    """Regenerated (lam -> TanhFit) table over the 20-value lam grid."""
    fits = {}
    start = time.perf_counter()
    for i in range(20):
        lam = round(0.05 * (i + 1), 2)
        points = sweep_cache(lam, 0, -1)["points"]
        xs, ys = converged_points(points)
        fits[lam] = fit_tanh(list(zip(xs, ys)), c0=1.0 / (2.0 * lam))
    return {"fits": fits, "elapsed": time.perf_counter() - start}


INDUCED_TAUS = (1.0, 2.0, 3.0, 4.0, 6.0, 10.0)
INDUCED_PERIOD_TAU = 22.2144


@pytest.fixture(scope="session")
def induced_suite():
    """Stepwise-rule runs for the canonical tau set plus the free-period tau,
    each over the largest integer number of intervals fitting in 500."""
    params = ModelParams(BASE_OMEGA[0], BASE_OMEGA[1], 0.1)
    runs = {}
    for tau in INDUCED_TAUS + (INDUCED_PERIOD_TAU,):
        n = int(500.0 // tau)
        schedule = RuleSchedule(tau=tau, horizon=n * tau)
        traj = run_induced(params, schedule)
        window = traj.times >= traj.times[-1] - 100.0
        runs[tau] = {
            "traj": traj,
            "result": detect_equilibrium(traj, amp_tol=0.01, window=100.0),
            "trailing_amp": float(
                traj.n1[window].max() - traj.n1[window].min()
            ),
            "drift": traj.occupation_drift(),
        }
    return runs
