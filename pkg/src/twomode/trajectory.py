"""Sampled trajectory container shared by the simulation front ends."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Trajectory:
    """Time series of mean occupations, effective inertias, and the coupling.

    ``coupling_im`` holds the imaginary part of the coupling expectation
    <phi, (a1^+ a2 - a2^+ a1) phi>; the stepwise-rule runner fills it with
    zeros, the continuous-limit integrator with the actual values.
    """

    times: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    omega1_eff: np.ndarray
    omega2_eff: np.ndarray
    coupling_im: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("times", "n1", "n2", "omega1_eff", "omega2_eff", "coupling_im"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.ndim != 1:
                raise ValueError(f"{name} must be one-dimensional")
            arrays[name] = arr
        length = arrays["times"].size
        if length == 0:
            raise ValueError("trajectory must contain at least one sample")
        for name, arr in arrays.items():
            if arr.size != length:
                raise ValueError(
                    f"{name} has {arr.size} samples, expected {length}"
                )
            setattr(self, name, arr)
        if np.any(np.diff(arrays["times"]) <= 0):
            raise ValueError("sample times must be strictly increasing")

    def __len__(self) -> int:
        return self.times.size

    @property
    def horizon(self) -> float:
        return float(self.times[-1] - self.times[0])

    def occupation_drift(self) -> float:
        """Max deviation of n1 + n2 from its initial value."""
        total = self.n1 + self.n2
        return float(np.max(np.abs(total - total[0])))
