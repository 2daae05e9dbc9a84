"""Closed-form Heisenberg dynamics of the quadratic two-mode Hamiltonian.

The model Hamiltonian is

    H = omega1 * a1^+ a1 + omega2 * a2^+ a2 + lam * (a1^+ a2 + a2^+ a1),

with positive inertia parameters omega1, omega2 and interaction strength
lam >= 0.  In the Heisenberg picture a_j(t) = exp(iHt) a_j exp(-iHt), and the
pair (a1(t), a2(t)) stays in the span of (a1(0), a2(0)):

    a1(t) = p11(t) a1(0) + p12(t) a2(0),
    a2(t) = p21(t) a1(0) + p22(t) a2(0),

where the coefficient matrix is the 2x2 unitary exp(-i t [[omega1, lam],
[lam, omega2]]).  Writing delta = sqrt((omega1 - omega2)^2 + 4 lam^2) for the
frequency gap and E(t) = exp(-i t (omega1 + omega2) / 2),

    p11 = E (cos(delta t / 2) - i ((omega1 - omega2) / delta) sin(delta t / 2)),
    p12 = p21 = -(2 i lam / delta) E sin(delta t / 2),
    p22 = E (cos(delta t / 2) + i ((omega1 - omega2) / delta) sin(delta t / 2)).

On a basis state with occupations (n1, n2) the mean occupations evolve as

    n1(t) = n1 (omega1 - omega2)^2 / delta^2
            + (4 lam^2 / delta^2) (n1 cos^2(delta t / 2) + n2 sin^2(delta t / 2)),

and symmetrically for n2(t); their sum is conserved and the motion is
periodic with period 2 pi / delta.  The degenerate point delta == 0
(omega1 == omega2 and lam == 0) is rejected: the dynamics there is trivially
constant and callers can short-circuit it themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import FockState, build_operators
from .errors import DegenerateParametersError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ModelParams:
    """Model parameter set plus the initial basis-state occupation labels.

    omega1, omega2 are the (initial) inertia parameters, lam the interaction
    strength, alpha1/alpha2 the rule-coupling coefficients of the
    self-adaptive dynamics (canonically drawn from {-1, 0, 1}), and (n1, n2)
    the occupation labels of the initial basis state.
    """

    omega1: float
    omega2: float
    lam: float
    alpha1: float = 0.0
    alpha2: float = 0.0
    n1: int = 1
    n2: int = 0

    def __post_init__(self):
        for name in ("omega1", "omega2", "lam", "alpha1", "alpha2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise ValueError(
                f"inertia parameters must be positive, got "
                f"({self.omega1!r}, {self.omega2!r})"
            )
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam!r}")
        if self.n1 not in (0, 1) or self.n2 not in (0, 1):
            raise ValueError(
                f"occupation labels must be 0 or 1, got ({self.n1!r}, {self.n2!r})"
            )

    @property
    def delta(self) -> float:
        """Frequency gap sqrt((omega1 - omega2)^2 + 4 lam^2)."""
        return math.hypot(self.omega1 - self.omega2, 2.0 * self.lam)

    def initial_state(self) -> FockState:
        return FockState.basis(self.n1, self.n2)


def frequency_gap(omega1: float, omega2: float, lam: float) -> float:
    return math.hypot(omega1 - omega2, 2.0 * lam)


class ExactPropagator:
    """Closed-form time-evolution coefficients for fixed (omega1, omega2, lam).

    Attributes
    ----------
    delta : float
        Frequency gap; strictly positive (the degenerate gap is rejected).
    period : float
        2 pi / delta, the period of the occupation oscillation.
    """

    def __init__(self, omega1: float, omega2: float, lam: float):
        delta = frequency_gap(omega1, omega2, lam)
        if delta == 0.0:
            raise DegenerateParametersError(
                "frequency gap is zero (omega1 == omega2 and lam == 0); "
                "the closed-form propagator is undefined"
            )
        self.omega1 = float(omega1)
        self.omega2 = float(omega2)
        self.lam = float(lam)
        self.delta = delta
        self.period = TWO_PI / delta
        self._half_sum = 0.5 * (omega1 + omega2)
        self._diff_ratio = (omega1 - omega2) / delta

    def phi_plus(self, t):
        """2 exp(-i t (omega1 + omega2) / 2) cos(delta t / 2)."""
        t = np.asarray(t, dtype=float)
        return 2.0 * np.exp(-1j * self._half_sum * t) * np.cos(0.5 * self.delta * t)

    def phi_minus(self, t):
        """-2 i exp(-i t (omega1 + omega2) / 2) sin(delta t / 2)."""
        t = np.asarray(t, dtype=float)
        return -2j * np.exp(-1j * self._half_sum * t) * np.sin(0.5 * self.delta * t)

    def coefficients(self, t):
        """Return (p11, p12, p21, p22) at time t (scalar or array)."""
        t = np.asarray(t, dtype=float)
        envelope = np.exp(-1j * self._half_sum * t)
        c = np.cos(0.5 * self.delta * t)
        s = np.sin(0.5 * self.delta * t)
        p11 = envelope * (c - 1j * self._diff_ratio * s)
        p12 = envelope * (-2j * self.lam / self.delta) * s
        p22 = envelope * (c + 1j * self._diff_ratio * s)
        return p11, p12, p12, p22


def build_hamiltonian(omega1: float, omega2: float, lam: float) -> np.ndarray:
    """The 4x4 Hamiltonian matrix in the fixed basis order.

    Diagonal (0, omega1, omega2, omega1 + omega2); the interaction couples
    the single-excitation states phi_10 and phi_01 with strength lam.
    """
    for name, value in (("omega1", omega1), ("omega2", omega2), ("lam", lam)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    h = np.zeros((4, 4), dtype=complex)
    h[1, 1] = omega1
    h[2, 2] = omega2
    h[3, 3] = omega1 + omega2
    h[1, 2] = lam
    h[2, 1] = lam
    return h


def exact_operators(params: ModelParams, t: float) -> tuple[np.ndarray, np.ndarray]:
    """The Heisenberg-evolved annihilation matrices (a1(t), a2(t)).

    At t = 0 this returns exactly the matrices of ``build_operators``.
    Raises DegenerateParametersError when the frequency gap vanishes.
    """
    prop = ExactPropagator(params.omega1, params.omega2, params.lam)
    p11, p12, p21, p22 = prop.coefficients(float(t))
    a1, a2 = build_operators()
    return p11 * a1 + p12 * a2, p21 * a1 + p22 * a2


def exact_mean_values(params: ModelParams, t):
    """Mean occupations (n1(t), n2(t)) on the initial basis state.

    Accepts a scalar or array ``t``; both values stay in [0, 1] and their sum
    equals n1 + n2 identically.
    """
    delta = params.delta
    if delta == 0.0:
        raise DegenerateParametersError(
            "frequency gap is zero (omega1 == omega2 and lam == 0)"
        )
    t = np.asarray(t, dtype=float)
    c2 = np.cos(0.5 * delta * t) ** 2
    s2 = np.sin(0.5 * delta * t) ** 2
    diff_frac = (params.omega1 - params.omega2) ** 2 / delta**2
    int_frac = 4.0 * params.lam**2 / delta**2
    n1t = params.n1 * diff_frac + int_frac * (params.n1 * c2 + params.n2 * s2)
    n2t = params.n2 * diff_frac + int_frac * (params.n2 * c2 + params.n1 * s2)
    if t.ndim == 0:
        return float(n1t), float(n2t)
    return n1t, n2t


def oscillation_period(params: ModelParams) -> float:
    """The occupation-oscillation period 2 pi / delta."""
    delta = params.delta
    if delta == 0.0:
        raise DegenerateParametersError(
            "frequency gap is zero (omega1 == omega2 and lam == 0)"
        )
    return TWO_PI / delta
