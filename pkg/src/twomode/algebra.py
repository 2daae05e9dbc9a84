"""Two-mode fermionic operator algebra on the four-dimensional Fock space.

The Hilbert space is spanned by the orthonormal occupation states, in the
fixed basis order

    (phi_00, phi_10, phi_01, phi_11),

where phi_{n1,n2} means mode 1 holds n1 excitations and mode 2 holds n2.
Every operator is a dense 4x4 complex matrix in this ordering.  The
annihilation pair (a1, a2) realizes the canonical anticommutation relations

    {a_j, a_k} = 0,    {a_j^+, a_k^+} = 0,    {a_j, a_k^+} = delta_jk * I,

with the Jordan-Wigner sign convention fixed by a2 phi_11 = -phi_10
(the single -1 entry of a2).  All entries are exact small integers embedded
in complex floats, so algebraic identities hold to machine precision; the
module-wide comparison tolerance is ``ATOL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Absolute per-entry tolerance for operator/state equality checks.
ATOL = 1e-12

# Occupation labels (n1, n2) of the four basis vectors, in basis order.
BASIS_LABELS = ((0, 0), (1, 0), (0, 1), (1, 1))


def basis_index(n1: int, n2: int) -> int:
    """Index of phi_{n1,n2} in the fixed basis order."""
    if n1 not in (0, 1) or n2 not in (0, 1):
        raise ValueError(f"occupation labels must be 0 or 1, got ({n1}, {n2})")
    return n1 + 2 * n2


def build_operators() -> tuple[np.ndarray, np.ndarray]:
    """Return the annihilation matrices (a1, a2) in the fixed basis order.

    a1 maps phi_10 -> phi_00 and phi_11 -> phi_01; a2 maps phi_01 -> phi_00
    and phi_11 -> -phi_10.  The -1 entry carries the fermionic exchange sign.
    """
    a1 = np.zeros((4, 4), dtype=complex)
    a1[0, 1] = 1.0
    a1[2, 3] = 1.0
    a2 = np.zeros((4, 4), dtype=complex)
    a2[0, 2] = 1.0
    a2[1, 3] = -1.0
    return a1, a2


def identity() -> np.ndarray:
    return np.eye(4, dtype=complex)


def dagger(op: np.ndarray) -> np.ndarray:
    """Hermitian adjoint."""
    return op.conj().T


def number_operators() -> tuple[np.ndarray, np.ndarray]:
    """The occupation-number matrices (a1^+ a1, a2^+ a2)."""
    a1, a2 = build_operators()
    return dagger(a1) @ a1, dagger(a2) @ a2


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """AB + BA."""
    return a @ b + b @ a


@dataclass(frozen=True)
class FockState:
    """A normalized state vector, optionally labeled as a basis vector.

    Attributes
    ----------
    coefficients : np.ndarray
        Length-4 complex vector in the basis order (phi_00, phi_10,
        phi_01, phi_11).  Must have unit norm within ``ATOL``.
    labels : tuple[int, int] | None
        (n1, n2) when the state is one of the four basis vectors.
    """

    coefficients: np.ndarray
    labels: tuple[int, int] | None = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.coefficients, dtype=complex).reshape(-1)
        if v.shape != (4,):
            raise ValueError(f"state vector must have length 4, got {v.shape}")
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("state vector has non-finite entries")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state vector must have unit norm, got {norm!r}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "coefficients", v)
        if self.labels is not None:
            idx = basis_index(*self.labels)
            expected = np.zeros(4, dtype=complex)
            expected[idx] = 1.0
            if not np.allclose(v, expected, atol=ATOL, rtol=0.0):
                raise ValueError(
                    f"labels {self.labels} do not match the coefficient vector"
                )

    @classmethod
    def basis(cls, n1: int, n2: int) -> "FockState":
        """The basis vector phi_{n1,n2}."""
        v = np.zeros(4, dtype=complex)
        v[basis_index(n1, n2)] = 1.0
        return cls(v, labels=(n1, n2))


def expectation(state: FockState, op: np.ndarray) -> complex:
    """Expectation value <state, op state>.

    The state must be normalized (enforced by the FockState constructor and
    re-checked here).  For a Hermitian ``op`` the imaginary part of the
    result is below ``ATOL``.
    """
    v = state.coefficients
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > ATOL:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    return complex(np.vdot(v, op @ v))
