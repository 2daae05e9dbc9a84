"""Asymptotic-state detection on sampled occupation trajectories.

Classification looks at the trailing window of the n1 series:

* converged -- the peak-to-peak amplitude over the window is below
  ``amp_tol``.  The reported equilibrium is the window mean (a point sample
  would carry residual ripple), and the settle time is the earliest time
  after which the amplitude criterion holds for the rest of the run.
* periodic -- the amplitude exceeds 10x ``amp_tol``, it is not decaying
  across the window, and the window autocorrelation shows a clean dominant
  period.  The reported time average is taken over a whole number of
  detected periods so a fractional tail cannot bias it.
* indeterminate -- anything else (typically a slowly decaying transient);
  reported explicitly rather than guessed.

The window must contain at least two oscillation periods for the periodic
test to be meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trajectory import Trajectory

DEFAULT_AMP_TOL = 1e-3
DEFAULT_WINDOW = 100.0

# Autocorrelation value at the dominant lag required to call a signal periodic.
_PERIODIC_QUALITY = 0.9
# Allowed ratio of trailing-half to leading-half amplitude for a periodic call.
# Tight on purpose: slowly decaying transients must fall through to
# indeterminate instead of being mistaken for genuine periodicity.
_HALF_RATIO = (0.98, 1.02)


@dataclass(frozen=True)
class EquilibriumResult:
    """Outcome of trailing-window classification.

    Exactly one of converged/periodic may be set; when both are False the
    run is indeterminate.  ``period`` is a diagnostic (only set for the
    periodic case).
    """

    converged: bool
    periodic: bool
    n1_eq: float | None = None
    settle_time: float | None = None
    time_average: float | None = None
    period: float | None = None

    def __post_init__(self):
        if self.converged and self.periodic:
            raise ValueError("converged and periodic are mutually exclusive")
        if self.converged and (self.n1_eq is None or self.settle_time is None):
            raise ValueError("a converged result needs n1_eq and settle_time")
        if self.periodic and self.time_average is None:
            raise ValueError("a periodic result needs time_average")

    @property
    def status(self) -> str:
        if self.converged:
            return "converged"
        if self.periodic:
            return "periodic"
        return "indeterminate"


def _dominant_period(y: np.ndarray, dt: float):
    """Dominant autocorrelation period of a demeaned series.

    Returns (period, quality) with quality the normalized autocorrelation at
    the dominant lag, or None when no credible peak exists.  Lags are limited
    to half the series so the unbiased normalization stays well conditioned.
    """
    y = y - y.mean()
    n = y.size
    max_lag = n // 2
    if max_lag < 4:
        return None
    r0 = float(np.dot(y, y)) / n
    if r0 <= 0.0:
        return None
    lags = np.arange(1, max_lag + 1)
    r = np.empty(max_lag + 1)
    r[0] = 1.0
    for lag in lags:
        r[lag] = float(np.dot(y[:-lag], y[lag:])) / (n - lag) / r0
    negative = np.nonzero(r < 0.0)[0]
    if negative.size == 0:
        return None
    start = int(negative[0])
    if start >= max_lag - 1:
        return None
    peak = start + int(np.argmax(r[start:]))
    if peak <= 0 or peak >= max_lag:
        return None
    # parabolic sub-sample refinement around the peak
    denom = r[peak - 1] - 2.0 * r[peak] + r[peak + 1]
    shift = 0.5 * (r[peak - 1] - r[peak + 1]) / denom if denom != 0.0 else 0.0
    period = (peak + shift) * dt
    return period, float(r[peak])


def detect_equilibrium(
    traj: Trajectory,
    amp_tol: float = DEFAULT_AMP_TOL,
    window: float = DEFAULT_WINDOW,
) -> EquilibriumResult:
    """Classify the trailing behavior of the n1 series.

    The trajectory must span at least twice the window.  Sampling is assumed
    uniform across the trailing window (both simulation front ends produce
    uniform grids).
    """
    if amp_tol <= 0 or window <= 0:
        raise ValueError("amp_tol and window must be positive")
    times = traj.times
    if traj.horizon < 2.0 * window:
        raise ValueError(
            f"trajectory horizon {traj.horizon:.6g} is shorter than twice "
            f"the detection window {window:.6g}"
        )
    t_end = times[-1]
    in_window = times >= t_end - window
    y = traj.n1[in_window]
    t_win = times[in_window]
    ptp = float(y.max() - y.min())

    if ptp < amp_tol:
        n1_eq = float(y.mean())
        settle_time = _settle_time(times, traj.n1, amp_tol)
        return EquilibriumResult(
            converged=True,
            periodic=False,
            n1_eq=n1_eq,
            settle_time=settle_time,
        )

    if ptp > 10.0 * amp_tol:
        half = y.size // 2
        ptp_lead = float(y[:half].max() - y[:half].min())
        ptp_trail = float(y[half:].max() - y[half:].min())
        steady = (
            ptp_lead > 0.0
            and _HALF_RATIO[0] <= ptp_trail / ptp_lead <= _HALF_RATIO[1]
        )
        dt = float(np.median(np.diff(t_win)))
        found = _dominant_period(y, dt) if steady else None
        if found is not None:
            period, quality = found
            if quality >= _PERIODIC_QUALITY:
                spans = max(1, int((t_win[-1] - t_win[0]) / period))
                k = max(2, round(spans * period / dt))
                k = min(k, y.size)
                return EquilibriumResult(
                    converged=False,
                    periodic=True,
                    time_average=float(y[-k:].mean()),
                    period=float(period),
                )

    return EquilibriumResult(converged=False, periodic=False)


def _settle_time(times: np.ndarray, n1: np.ndarray, amp_tol: float) -> float:
    """Earliest time after which the suffix peak-to-peak stays below amp_tol."""
    suffix_max = np.maximum.accumulate(n1[::-1])[::-1]
    suffix_min = np.minimum.accumulate(n1[::-1])[::-1]
    ok = (suffix_max - suffix_min) < amp_tol
    idx = int(np.argmax(ok))
    return float(times[idx])
