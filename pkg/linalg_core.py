"""
Dense complex matrix kernel.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128 and shape
(dim, dim). Everything downstream (states, Hamiltonians, propagators) is
built on the handful of routines in this module.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from constants import (
    EIGEN_METHOD,
    JACOBI_MAX_SWEEPS,
    JACOBI_OFFDIAG_TOL,
    TOL_STRUCTURAL,
)
from errors import DimensionMismatch, NoConvergence, NotHermitian, NotPositive

logger = logging.getLogger(__name__)

# Qubits are addressed by label only. Positions are derived from rho.labels
# internally, so numpy negative indexing never reaches a caller.
ComplexMatrix = np.ndarray

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending real eigenvalues plus the unitary matrix of eigenvector columns"""

    eigenvalues: np.ndarray
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """Return V · diag(eigenvalues) · V†"""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(a) -> ComplexMatrix:
    """Coerce input to a complex square matrix, rejecting anything else"""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"Expected a non-empty square matrix, got shape {m.shape}")
    return m


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    return np.conj(a).T


def frobenius_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a, "fro"))


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return a @ b - b @ a


def hermiticity_error(h: ComplexMatrix) -> float:
    """Largest element-wise deviation |h[i,j] - conj(h[j,i])|"""
    h = as_square(h)
    return float(np.max(np.abs(h - dagger(h))))


def is_hermitian(h: ComplexMatrix, tol: float = TOL_STRUCTURAL) -> bool:
    return hermiticity_error(h) <= tol


def is_unitary(u: ComplexMatrix, tol: float) -> bool:
    u = as_square(u)
    return frobenius_norm(dagger(u) @ u - np.eye(u.shape[0])) <= tol


def kronecker_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """
    Kronecker product with entry[(i*db + k), (j*db + l)] = a[i,j] * b[k,l]

    Args:
        a: Left factor (most significant index)
        b: Right factor

    Returns:
        Matrix of dimension a.dim * b.dim
    """
    return np.kron(as_square(a), as_square(b))


def _check_hermitian(h: ComplexMatrix) -> ComplexMatrix:
    h = as_square(h)
    err = hermiticity_error(h)
    if err > TOL_STRUCTURAL:
        raise NotHermitian(f"Matrix deviates from its adjoint by {err:.3e}")
    # Symmetrize so roundoff never leaks into the solver
    return (h + dagger(h)) / 2


def _jacobi_eigh(h: ComplexMatrix):
    """Cyclic complex Jacobi rotations on a Hermitian matrix"""
    a = h.copy()
    dim = a.shape[0]
    v = np.eye(dim, dtype=complex)

    for sweep in range(JACOBI_MAX_SWEEPS + 1):
        off = frobenius_norm(a - np.diag(np.diag(a)))
        if off < JACOBI_OFFDIAG_TOL:
            logger.debug(f"Jacobi converged after {sweep} sweeps (dim={dim})")
            return np.real(np.diag(a)).copy(), v
        if sweep == JACOBI_MAX_SWEEPS:
            break

        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                theta = 0.5 * np.arctan2(2.0 * r, np.real(a[p, p]) - np.real(a[q, q]))
                c, s = np.cos(theta), np.sin(theta)
                # G = diag(1, conj(phase)) @ [[c, -s], [s, c]]
                g = np.array([[c, -s], [np.conj(phase) * s, np.conj(phase) * c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = dagger(g) @ a[idx, :]
                v[:, idx] = v[:, idx] @ g

    raise NoConvergence(
        f"Jacobi eigensolver did not converge within {JACOBI_MAX_SWEEPS} sweeps (dim={dim})"
    )


def hermitian_eigendecomposition(h: ComplexMatrix, method: Optional[str] = None) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix

    Args:
        h: Hermitian input (within 1e-10)
        method: "lapack" or "jacobi"; defaults to constants.EIGEN_METHOD

    Returns:
        EigenDecomposition with ascending eigenvalues
    """
    h = _check_hermitian(h)
    method = method or EIGEN_METHOD

    if method == "jacobi":
        values, vectors = _jacobi_eigh(h)
    elif method == "lapack":
        try:
            values, vectors = np.linalg.eigh(h)
        except np.linalg.LinAlgError as e:
            raise NoConvergence(f"LAPACK eigensolver failed: {e}") from e
    else:
        raise ValueError(f"Unknown eigensolver method: {method}")

    # Stable sort keeps the column order of ties
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(np.asarray(values, dtype=float)[order], vectors[:, order])


def hermitian_eigenvalues(stack: np.ndarray, method: Optional[str] = None) -> np.ndarray:
    """Ascending eigenvalues of one Hermitian matrix or a stack of them (..., dim, dim)"""
    stack = np.asarray(stack, dtype=complex)
    method = method or EIGEN_METHOD
    if method == "lapack":
        try:
            return np.linalg.eigvalsh(stack)
        except np.linalg.LinAlgError as e:
            raise NoConvergence(f"LAPACK eigensolver failed: {e}") from e

    flat = stack.reshape((-1,) + stack.shape[-2:])
    values = [hermitian_eigendecomposition(m, method).eigenvalues for m in flat]
    return np.array(values).reshape(stack.shape[:-1])


def spectral_function(h: ComplexMatrix, f: Callable[[np.ndarray], np.ndarray],
                      method: Optional[str] = None) -> ComplexMatrix:
    """
    Apply a scalar function to a Hermitian matrix through its spectrum

    Args:
        h: Hermitian input
        f: Function evaluated element-wise on the real eigenvalue array
        method: Eigensolver selection

    Returns:
        V · diag(f(λ)) · V†
    """
    eig = hermitian_eigendecomposition(h, method)
    fvals = np.asarray(f(eig.eigenvalues), dtype=complex)
    v = eig.eigenvectors
    return (v * fvals) @ dagger(v)


def clamp_psd_spectrum(values: np.ndarray, tol: float = TOL_STRUCTURAL) -> np.ndarray:
    """Zero eigenvalues in [-tol, 0); anything more negative is an error"""
    values = np.asarray(values, dtype=float)
    lowest = float(np.min(values))
    if lowest < -tol:
        raise NotPositive(f"Eigenvalue {lowest:.3e} is below -{tol:g}")
    return np.where(values < 0.0, 0.0, values)


def psd_sqrt(h: ComplexMatrix, method: Optional[str] = None) -> ComplexMatrix:
    """Unique positive square root of a PSD matrix"""
    return spectral_function(h, lambda lam: np.sqrt(clamp_psd_spectrum(lam)), method)


def exp_minus_i(h: ComplexMatrix, tau: float, method: Optional[str] = None) -> ComplexMatrix:
    """exp(-i·tau·h) for Hermitian h"""
    return spectral_function(h, lambda lam: np.exp(-1j * tau * lam), method)


def unitary_conjugate(u: ComplexMatrix, a: ComplexMatrix) -> ComplexMatrix:
    """Return U·A·U†"""
    u = as_square(u)
    a = as_square(a)
    if u.shape != a.shape:
        raise DimensionMismatch(f"Cannot conjugate {a.shape} by {u.shape}")
    return u @ a @ dagger(u)
