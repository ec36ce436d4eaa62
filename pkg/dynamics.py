"""
Interaction Hamiltonians, unitary propagators and closed-system evolution (hbar = 1).
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from constants import TOL_DERIVED
from errors import DimensionMismatch, DomainError, NotHermitian, NotUnitary
from linalg_core import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    ComplexMatrix,
    as_square,
    dagger,
    exp_minus_i,
    hermitian_eigendecomposition,
    is_hermitian,
    is_unitary,
    kronecker_product,
    unitary_conjugate,
)
from quantum_state import DensityMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PropagatorSpec:
    """Hermitian generator plus evolution time: U = exp(-i·duration·H)"""

    hamiltonian: ComplexMatrix
    duration: float

    def __post_init__(self):
        h = as_square(self.hamiltonian)
        if not is_hermitian(h):
            raise NotHermitian("Propagator Hamiltonian is not Hermitian")
        if not math.isfinite(self.duration):
            raise DomainError(f"Duration must be finite, got {self.duration}")
        object.__setattr__(self, "hamiltonian", h)


def _flip_flop() -> ComplexMatrix:
    """sigma_x ⊗ sigma_y - sigma_y ⊗ sigma_x"""
    return kronecker_product(SIGMA_X, SIGMA_Y) - kronecker_product(SIGMA_Y, SIGMA_X)


def effective_hamiltonian_2q() -> ComplexMatrix:
    """(pi/2)(sigma_x^A sigma_y^B - sigma_y^A sigma_x^B); entry (|01>,|10>) is i*pi"""
    return (math.pi / 2) * _flip_flop()


def exchange_hamiltonian() -> ComplexMatrix:
    """(sigma_x sigma_y - sigma_y sigma_x)/2 on a neighbouring pair"""
    return _flip_flop() / 2


def interaction_hamiltonian_3q(t: float, s: float) -> ComplexMatrix:
    """
    t·(H_AB ⊗ I_C) + s·(I_A ⊗ H_BC) in (A, B, C) order

    Args:
        t: Strength of the A-B coupling
        s: Strength of the B-C coupling
    """
    pair = exchange_hamiltonian()
    return t * kronecker_product(pair, IDENTITY_2) + s * kronecker_product(IDENTITY_2, pair)


def propagator(spec: PropagatorSpec) -> ComplexMatrix:
    """Unitary exp(-i·duration·H) via the spectral decomposition of H"""
    u = exp_minus_i(spec.hamiltonian, spec.duration)
    if not is_unitary(u, TOL_DERIVED):
        raise NotUnitary(f"Propagator for duration {spec.duration} is not unitary")
    return u


def propagators(h: ComplexMatrix, durations: Sequence[float]) -> Iterator[ComplexMatrix]:
    """
    exp(-i·t·H) for each t in durations, every one built from t = 0

    The eigendecomposition of H is computed once and reused.
    """
    eig = hermitian_eigendecomposition(h)
    v = eig.eigenvectors
    v_dag = dagger(v)
    for t in durations:
        yield (v * np.exp(-1j * t * eig.eigenvalues)) @ v_dag


def evolve(rho0: DensityMatrix, u: ComplexMatrix) -> DensityMatrix:
    """
    rho(t) = U·rho0·U†, revalidated

    Raises:
        DimensionMismatch: U and rho0 differ in dimension
        NotUnitary: U fails the 1e-9 unitarity check
    """
    u = as_square(u)
    if u.shape != rho0.matrix.shape:
        raise DimensionMismatch(f"Propagator {u.shape} does not act on state {rho0.matrix.shape}")
    if not is_unitary(u, TOL_DERIVED):
        raise NotUnitary("Evolution operator is not unitary")
    return DensityMatrix(unitary_conjugate(u, rho0.matrix), rho0.labels)


def time_grid(start: float, end: float, steps: int) -> np.ndarray:
    """Inclusive, evenly spaced grid of `steps` points"""
    if steps < 2:
        raise DomainError(f"A time grid needs at least 2 points, got {steps}")
    if not start < end:
        raise DomainError(f"Grid start {start} must be below end {end}")
    return np.linspace(start, end, steps)
