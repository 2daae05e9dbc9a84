"""Operator algebra: printed matrices, CAR identities, states, expectations."""

import numpy as np
import pytest

from twomode import (
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


def test_annihilation_matrices_match_reference_entries():
    a1, a2 = build_operators()
    expected_a1 = np.zeros((4, 4), dtype=complex)
    expected_a1[0, 1] = 1.0
    expected_a1[2, 3] = 1.0
    expected_a2 = np.zeros((4, 4), dtype=complex)
    expected_a2[0, 2] = 1.0
    expected_a2[1, 3] = -1.0
    assert np.array_equal(a1, expected_a1)
    assert np.array_equal(a2, expected_a2)


def test_car_identities_hold_exactly():
    a1, a2 = build_operators()
    ops = {1: a1, 2: a2}
    eye = identity()
    for j in (1, 2):
        for k in (1, 2):
            assert np.abs(anticommutator(ops[j], ops[k])).max() <= ATOL
            assert (
                np.abs(anticommutator(dagger(ops[j]), dagger(ops[k]))).max()
                <= ATOL
            )
            target = eye if j == k else np.zeros((4, 4))
            mixed = anticommutator(ops[j], dagger(ops[k]))
            assert np.abs(mixed - target).max() <= ATOL


def test_nilpotency_is_exact():
    a1, a2 = build_operators()
    for op in (a1, a2):
        assert np.array_equal(op @ op, np.zeros((4, 4), dtype=complex))
        assert np.array_equal(
            dagger(op) @ dagger(op), np.zeros((4, 4), dtype=complex)
        )


def test_number_operator_eigenrelations():
    n1op, n2op = number_operators()
    for n1, n2 in BASIS_LABELS:
        state = FockState.basis(n1, n2).coefficients
        assert np.allclose(n1op @ state, n1 * state, atol=ATOL)
        assert np.allclose(n2op @ state, n2 * state, atol=ATOL)


def test_basis_index_order():
    assert [basis_index(*labels) for labels in BASIS_LABELS] == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        basis_index(2, 0)


def test_expectation_on_eigenstates():
    n1op, n2op = number_operators()
    phi10 = FockState.basis(1, 0)
    assert expectation(phi10, n1op) == pytest.approx(1.0, abs=ATOL)
    assert expectation(phi10, n2op) == pytest.approx(0.0, abs=ATOL)


def test_coupling_observable_vanishes_on_basis_states():
    a1, a2 = build_operators()
    coupling = dagger(a1) @ a2 - dagger(a2) @ a1
    for n1, n2 in BASIS_LABELS:
        value = expectation(FockState.basis(n1, n2), coupling)
        assert abs(value) <= ATOL


def test_coupling_observable_is_anti_hermitian_and_purely_imaginary():
    a1, a2 = build_operators()
    coupling = dagger(a1) @ a2 - dagger(a2) @ a1
    assert np.abs(dagger(coupling) + coupling).max() <= ATOL
    rng = np.random.default_rng(7)
    for _ in range(50):
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = FockState(raw / np.linalg.norm(raw))
        assert abs(expectation(state, coupling).real) <= 1e-12


def test_expectation_hermitian_gives_real_values():
    n1op, _ = number_operators()
    rng = np.random.default_rng(11)
    for _ in range(50):
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = FockState(raw / np.linalg.norm(raw))
        assert abs(expectation(state, n1op).imag) <= 1e-12


def test_fock_state_validation():
    with pytest.raises(ValueError):
        FockState(np.array([1.0, 1.0, 0.0, 0.0]))  # not normalized
    with pytest.raises(ValueError):
        FockState(np.array([1.0, 0.0, 0.0]))  # wrong length
    with pytest.raises(ValueError):
        FockState(np.array([0.0, 1.0, 0.0, 0.0]), labels=(0, 1))  # mislabeled
    state = FockState.basis(1, 1)
    assert state.labels == (1, 1)
    assert state.coefficients[3] == 1.0


def test_expectation_rejects_unnormalized_state():
    state = FockState.basis(1, 0)
    # bypass the constructor guard to exercise the expectation-side check
    object.__setattr__(
        state, "coefficients", np.array([2.0, 0, 0, 0], dtype=complex)
    )
    with pytest.raises(ValueError):
        expectation(state, identity())
