import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

import linalg_core
from conftest import hermitian_matrices, random_hermitian, random_unitary
from errors import DimensionMismatch, NoConvergence, NotHermitian, NotPositive
from linalg_core import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    exp_minus_i,
    hermitian_eigendecomposition,
    hermitian_eigenvalues,
    is_unitary,
    kronecker_product,
    psd_sqrt,
    spectral_function,
    unitary_conjugate,
)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigendecomposition_reconstructs(rng, method):
    for dim in (1, 2, 4, 8):
        h = random_hermitian(rng, dim)
        eig = hermitian_eigendecomposition(h, method)
        np.testing.assert_allclose(eig.reconstruct(), h, atol=1e-10)
        assert is_unitary(eig.eigenvectors, 1e-10)
        assert np.all(np.diff(eig.eigenvalues) >= 0)


@settings(max_examples=50, deadline=None)
@given(hermitian_matrices(4))
def test_eigendecomposition_property(h):
    eig = hermitian_eigendecomposition(h)
    scale = max(1.0, np.max(np.abs(h)))
    np.testing.assert_allclose(eig.reconstruct(), h, atol=1e-10 * scale)


def test_jacobi_agrees_with_lapack(rng):
    for _ in range(20):
        h = random_hermitian(rng, 8)
        jacobi = hermitian_eigendecomposition(h, "jacobi").eigenvalues
        lapack = hermitian_eigendecomposition(h, "lapack").eigenvalues
        np.testing.assert_allclose(jacobi, lapack, atol=1e-10)


def test_jacobi_sweep_cap(monkeypatch, rng):
    monkeypatch.setattr(linalg_core, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(NoConvergence):
        hermitian_eigendecomposition(random_hermitian(rng, 4), "jacobi")


def test_diagonal_input_is_sorted():
    eig = hermitian_eigendecomposition(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_allclose(eig.eigenvalues, [-1.0, 2.0, 3.0])


def test_non_hermitian_rejected():
    with pytest.raises(NotHermitian):
        hermitian_eigendecomposition(np.array([[0, 1], [0, 0]]))


def test_non_square_rejected():
    with pytest.raises(DimensionMismatch):
        hermitian_eigendecomposition(np.zeros((2, 3)))


def test_batched_eigenvalues_match_single(rng):
    stack = np.array([random_hermitian(rng, 4) for _ in range(5)])
    batched = hermitian_eigenvalues(stack)
    for m, values in zip(stack, batched):
        np.testing.assert_allclose(values, hermitian_eigendecomposition(m).eigenvalues, atol=1e-12)
    np.testing.assert_allclose(hermitian_eigenvalues(stack, "jacobi"), batched, atol=1e-10)


def test_psd_sqrt_squares_back(rng):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    p = g @ g.conj().T
    root = psd_sqrt(p)
    np.testing.assert_allclose(root @ root, p, atol=1e-10)
    np.testing.assert_allclose(root, scipy.linalg.sqrtm(p), atol=1e-8)


def test_psd_sqrt_clamps_roundoff():
    root = psd_sqrt(np.diag([1.0, -1e-12]))
    np.testing.assert_allclose(root, np.diag([1.0, 0.0]), atol=1e-15)


def test_psd_sqrt_rejects_negative():
    with pytest.raises(NotPositive):
        psd_sqrt(np.diag([1.0, -1e-6]))


def test_exp_minus_i_matches_expm(rng):
    for tau in (0.0, 0.3, 2.5):
        h = random_hermitian(rng, 8)
        np.testing.assert_allclose(exp_minus_i(h, tau), scipy.linalg.expm(-1j * tau * h), atol=1e-10)


def truncated_exp(a, terms=30):
    term = np.eye(a.shape[0], dtype=complex)
    total = term.copy()
    for k in range(1, terms):
        term = term @ a / k
        total = total + term
    return total


def test_exp_minus_i_matches_truncated_series(rng):
    for _ in range(100):
        h = random_hermitian(rng, 8)
        h = h / np.linalg.norm(h, 2)
        np.testing.assert_allclose(exp_minus_i(h, 1.0), truncated_exp(-1j * h), atol=1e-8)


def test_spectral_function_identity(rng):
    h = random_hermitian(rng, 4)
    np.testing.assert_allclose(spectral_function(h, lambda lam: lam), h, atol=1e-10)


def test_unitary_conjugate_preserves_trace(rng):
    u = exp_minus_i(random_hermitian(rng, 4), 1.0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.trace(unitary_conjugate(u, a)) == pytest.approx(np.trace(a), abs=1e-10)


def test_unitary_conjugate_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        unitary_conjugate(random_unitary(rng, 2), np.eye(4))


def test_kronecker_convention():
    k = kronecker_product(SIGMA_X, SIGMA_Z)
    # entry[(i*2 + k), (j*2 + l)] = a[i,j] * b[k,l]
    assert k[0 * 2 + 1, 1 * 2 + 1] == SIGMA_X[0, 1] * SIGMA_Z[1, 1]
    assert k.shape == (4, 4)


def test_pauli_algebra():
    np.testing.assert_allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)
