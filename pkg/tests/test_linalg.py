import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from toeplitz_synth.linalg import (
    ConvergenceError,
    expm_oracle,
    hermitian_eigvalsh,
    is_unitary,
    jacobi_eigh,
)


@pytest.mark.parametrize("size", [1, 2, 3, 5, 8, 17, 32])
def test_jacobi_matches_lapack(rng, size):
    a = rng.normal(size=(size, size))
    a = a + a.T
    w, v = jacobi_eigh(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-12 * max(1, np.abs(a).max()))
    np.testing.assert_allclose(v.T @ v, np.eye(size), atol=1e-12)
    np.testing.assert_allclose(v @ np.diag(w) @ v.T, a, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(size=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_jacobi_complex_hermitian(size, seed):
    r = np.random.default_rng(seed)
    z = r.normal(size=(size, size)) + 1j * r.normal(size=(size, size))
    a = z + z.conj().T
    w, v = jacobi_eigh(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-12 * max(1, np.abs(a).max()))
    np.testing.assert_allclose(v.conj().T @ v, np.eye(size), atol=1e-12)
    np.testing.assert_allclose((v * w) @ v.conj().T, a, atol=1e-11)


def test_jacobi_warm_start(rng):
    z = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    a = z + z.conj().T
    _, basis = jacobi_eigh(a)
    b = a + 1e-3 * np.diag(rng.normal(size=16))
    w, v = jacobi_eigh(b, basis=basis, max_sweeps=3)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(b), atol=1e-12 * np.abs(b).max())
    np.testing.assert_allclose((v * w) @ v.conj().T, b, atol=1e-11)


def test_jacobi_degenerate_and_zero():
    w, v = jacobi_eigh(np.zeros((4, 4)))
    assert np.all(w == 0) and np.array_equal(v, np.eye(4))
    x = np.kron(np.eye(4), [[0, 1], [1, 0]])
    w, _ = jacobi_eigh(x)
    np.testing.assert_allclose(w, [-1] * 4 + [1] * 4, atol=1e-14)


def test_jacobi_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_jacobi_sweep_cap(rng):
    a = rng.normal(size=(6, 6))
    with pytest.raises(ConvergenceError):
        jacobi_eigh(a + a.T, max_sweeps=1)


def test_hermitian_eigvalsh_complex(rng):
    z = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = z + z.conj().T
    np.testing.assert_allclose(hermitian_eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-12)


def test_expm_identity_at_zero(rng):
    a = rng.normal(size=(8, 8))
    np.testing.assert_allclose(expm_oracle(a + a.T, 0.0), np.eye(8), atol=1e-14)


@pytest.mark.parametrize("theta", [0.0, 0.3, np.pi / 2, 2.5])
def test_expm_pauli_x(theta):
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    c, s = np.cos(theta), np.sin(theta)
    np.testing.assert_allclose(expm_oracle(x, theta), [[c, -1j * s], [-1j * s, c]], atol=1e-14)


def test_expm_scalar_is_phase():
    np.testing.assert_allclose(expm_oracle(1.7 * np.eye(4), 0.4), np.exp(-1j * 1.7 * 0.4) * np.eye(4), atol=1e-14)


def test_expm_against_pade(rng):
    a = rng.normal(size=(16, 16))
    h = a + a.T
    np.testing.assert_allclose(expm_oracle(h, 0.7), scipy.linalg.expm(-0.7j * h), atol=1e-11)


def test_expm_group_law(rng):
    a = rng.normal(size=(16, 16))
    h = a + a.T
    np.testing.assert_allclose(expm_oracle(h, 0.3) @ expm_oracle(h, 1.1), expm_oracle(h, 1.4), atol=1e-10)
    assert is_unitary(expm_oracle(h, 5.0), atol=1e-10)


def test_expm_rejects_non_hermitian():
    with pytest.raises(ValueError):
        expm_oracle(np.array([[0.0, 1.0], [2.0, 0.0]]), 1.0)
