import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from scripts.physics.algebra import (
    IDENTITY,
    KET_DOWN,
    KET_UP,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    as_ket,
    as_mat2,
    commutator,
    determinant,
    eigen_gap,
    expectation,
    is_hermitian,
    is_normalized,
    is_unitary,
    matrix_element,
    pauli_components,
    pauli_expi,
    pauli_vector,
    trace,
)
from scripts.physics.errors import DomainError

components = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False)
vectors = st.tuples(components, components, components)


def test_pauli_products():
    np.testing.assert_allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)
    np.testing.assert_allclose(SIGMA_Y @ SIGMA_Z, 1j * SIGMA_X)
    np.testing.assert_allclose(SIGMA_Z @ SIGMA_X, 1j * SIGMA_Y)
    for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        np.testing.assert_allclose(sigma @ sigma, IDENTITY)
        assert trace(sigma) == 0
        assert determinant(sigma) == -1


def test_commutator_of_paulis():
    np.testing.assert_allclose(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z)


def test_constants_are_read_only():
    with pytest.raises(ValueError):
        SIGMA_X[0, 0] = 5


def test_pauli_vector_roundtrips_through_components():
    m = pauli_vector([0.3, -1.2, 2.0])
    c0, cx, cy, cz = pauli_components(m)
    assert c0 == 0
    np.testing.assert_allclose([cx, cy, cz], [0.3, -1.2, 2.0])


@given(vectors)
@settings(max_examples=60, deadline=None)
def test_pauli_expi_matches_expm(a):
    exact = expm(1j * pauli_vector(a))
    np.testing.assert_allclose(pauli_expi(a), exact, atol=1e-12)


@given(vectors)
@settings(max_examples=60, deadline=None)
def test_pauli_expi_is_unitary_with_unit_determinant(a):
    u = pauli_expi(a)
    assert is_unitary(u, tol=1e-12)
    assert abs(determinant(u) - 1) < 1e-12


def test_pauli_expi_small_angle_branch():
    a = [1e-10, -2e-10, 5e-11]
    np.testing.assert_allclose(pauli_expi(a), IDENTITY + 1j * pauli_vector(a), atol=1e-18)
    np.testing.assert_array_equal(pauli_expi([0.0, 0.0, 0.0]), IDENTITY)


def test_pauli_expi_half_turn():
    np.testing.assert_allclose(pauli_expi([0.0, 0.0, math.pi / 2]), 1j * SIGMA_Z, atol=1e-15)


@pytest.mark.parametrize("bad", [[1.0, 2.0], [math.nan, 0.0, 0.0], [0.0, math.inf, 0.0]])
def test_pauli_expi_rejects_bad_vectors(bad):
    with pytest.raises(DomainError):
        pauli_expi(bad)


def test_as_mat2_and_as_ket_validate_shape():
    with pytest.raises(DomainError):
        as_mat2(np.eye(3))
    with pytest.raises(DomainError):
        as_ket([1.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        as_mat2([[math.nan, 0], [0, 1]])
    assert as_mat2([[1, 0], [0, 1]]).dtype == np.complex128


def test_hermitian_and_unitary_predicates():
    assert is_hermitian(SIGMA_Y)
    assert not is_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))
    assert is_unitary(SIGMA_X)
    assert not is_unitary(2 * IDENTITY)


def test_matrix_elements_and_expectations():
    assert is_normalized(KET_UP)
    assert expectation(SIGMA_Z, KET_UP) == 1
    assert expectation(SIGMA_Z, KET_DOWN) == -1
    assert matrix_element(KET_DOWN, SIGMA_X, KET_UP) == 1
    assert matrix_element(KET_DOWN, SIGMA_Y, KET_UP) == 1j


def test_eigen_gap():
    assert eigen_gap(3 * SIGMA_Z) == pytest.approx(6.0)
    assert eigen_gap(pauli_vector([1.0, 1.0, 1.0])) == pytest.approx(2 * math.sqrt(3))
