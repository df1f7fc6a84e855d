import numpy as np
import pytest
import scipy.linalg as la
from hypothesis import given, settings, strategies as st

from gcsboson.exceptions import DimensionError, PreconditionError
from gcsboson.unitary import (fractional_power, haar_unitary, hermiticity_defect, phase_matrix,
                              unitarity_defect)

seeds = st.integers(min_value=0, max_value=2**63 - 1)


def test_haar_dim_one_is_a_phase():
    U = haar_unitary(1, 7)
    assert U.shape == (1, 1)
    assert abs(abs(U[0, 0]) - 1) < 1e-12


def test_haar_unitarity_defect():
    assert unitarity_defect(haar_unitary(8, 42)) <= 1e-12


def test_haar_rejects_zero_dim():
    with pytest.raises(DimensionError):
        haar_unitary(0, 1)


def test_haar_reproducible():
    a, b = haar_unitary(5, 123), haar_unitary(5, 123)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, haar_unitary(5, 124))


def test_haar_second_moment_monte_carlo():
    # E|U_11|^2 = 1/M under the Haar measure
    M, R = 16, 10_000
    samples = np.array([abs(haar_unitary(M, s)[0, 0]) ** 2 for s in range(R)])
    stderr = samples.std(ddof=1) / np.sqrt(R)
    assert abs(samples.mean() - 1 / M) < 3 * stderr


def test_haar_eigenphases_not_biased():
    # QR without the phase fix concentrates eigenphases; with it they are uniform
    phases = np.concatenate([np.angle(np.linalg.eigvals(haar_unitary(4, s))) for s in range(2000)])
    hist, _ = np.histogram(phases, bins=8, range=(-np.pi, np.pi))
    expected = phases.size / 8
    chi2 = np.sum((hist - expected) ** 2 / expected)
    assert chi2 < 30  # 7 dof; p ~ 1e-4


def test_phase_matrix_identity():
    assert np.allclose(phase_matrix(np.eye(3)), 0, atol=1e-14)


def test_phase_matrix_scalar():
    U = np.array([[np.exp(1j * np.pi / 3)]])
    Phi = phase_matrix(U)
    assert abs(la.expm(-1j * Phi) - U.conj().T).max() <= 1e-12
    assert np.isclose(Phi[0, 0].real, np.pi / 3)


def test_phase_matrix_reexponentiates():
    U = haar_unitary(6, 3)
    Phi = phase_matrix(U)
    assert hermiticity_defect(Phi) <= 1e-10
    assert abs(la.expm(-1j * Phi) - U.conj().T).max() <= 1e-8
    assert np.all(np.abs(np.linalg.eigvalsh(Phi)) <= np.pi + 1e-12)


def test_phase_matrix_rejects_non_unitary():
    with pytest.raises(PreconditionError):
        phase_matrix(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_phase_matrix_degenerate_spectrum():
    # reflection: eigenvalues +1, +1, -1
    v = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
    U = np.eye(3) - 2 * np.outer(v, v)
    Phi = phase_matrix(U)
    assert abs(la.expm(-1j * Phi) - U.conj().T).max() <= 1e-10


def test_fractional_power_endpoints():
    U = haar_unitary(5, 11)
    assert np.abs(fractional_power(U, 0) - np.eye(5)).max() <= 1e-12
    assert np.abs(fractional_power(U, 1) - U).max() <= 1e-10


def test_fractional_square_root():
    U = haar_unitary(5, 12)
    V = fractional_power(U, 0.5)
    assert np.abs(V @ V - U).max() <= 1e-8


def test_fractional_power_range():
    with pytest.raises(PreconditionError):
        fractional_power(np.eye(2), 1.5)
    with pytest.raises(PreconditionError):
        fractional_power(np.eye(2), -0.1)


@settings(max_examples=25, deadline=None)
@given(seed=seeds, dim=st.integers(1, 8))
def test_fractional_powers_unitary(seed, dim):
    U = haar_unitary(dim, seed)
    for t in (0, 0.25, 0.5, 0.75, 1):
        assert unitarity_defect(fractional_power(U, t)) <= 1e-10


@settings(max_examples=25, deadline=None)
@given(seed=seeds, t1=st.floats(0, 1), t2=st.floats(0, 1))
def test_fractional_power_semigroup(seed, t1, t2):
    if t1 + t2 > 1:
        t1, t2 = t1 / 2, t2 / 2
    U = haar_unitary(4, seed)
    lhs = fractional_power(U, t1) @ fractional_power(U, t2)
    assert np.abs(lhs - fractional_power(U, t1 + t2)).max() <= 1e-8
