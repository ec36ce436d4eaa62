"""
Density matrices, the local Hamiltonians of the experiments, and qubit bookkeeping.

Basis convention: |0> = (1, 0)^T with sigma_z|0> = +|0>. A multi-qubit basis
index is the binary number formed by the qubit values with the first label
as the most significant bit, so |01><10| over labels (A, B) is the entry at
row 1, column 2.
"""

import logging
import math
import string
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from constants import TOL_STRUCTURAL
from errors import DomainError, LabelMismatch, NotHermitian, NotPositive, UnknownLabel
from linalg_core import (
    IDENTITY_2,
    SIGMA_Z,
    ComplexMatrix,
    as_square,
    hermitian_eigendecomposition,
    hermitian_eigenvalues,
    hermiticity_error,
    kronecker_product,
)

logger = logging.getLogger(__name__)

QubitLabeling = Tuple[str, ...]


def default_labels(qubits: int) -> QubitLabeling:
    return tuple(string.ascii_uppercase[:qubits])


def _qubit_count(dim: int) -> int:
    qubits = dim.bit_length() - 1
    if qubits < 1 or 2 ** qubits != dim:
        raise DomainError(f"Dimension {dim} is not a power of two")
    return qubits


def check_labeling(labels: Sequence[str], qubits: int) -> QubitLabeling:
    labels = tuple(labels)
    if len(labels) != qubits:
        raise LabelMismatch(f"Labeling {labels} does not cover {qubits} qubits")
    if len(set(labels)) != len(labels):
        raise LabelMismatch(f"Labeling {labels} repeats a label")
    return labels


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Validated quantum state: Hermitian, unit trace and PSD up to roundoff

    Construction raises NotHermitian, DomainError (trace) or NotPositive.
    """

    matrix: ComplexMatrix
    labels: QubitLabeling = field(default=())

    def __post_init__(self):
        m = as_square(self.matrix)
        qubits = _qubit_count(m.shape[0])
        labels = check_labeling(self.labels or default_labels(qubits), qubits)

        err = hermiticity_error(m)
        if err > TOL_STRUCTURAL:
            raise NotHermitian(f"State deviates from its adjoint by {err:.3e}")
        m = (m + m.conj().T) / 2

        trace = np.trace(m).real
        if abs(trace - 1.0) > TOL_STRUCTURAL:
            raise DomainError(f"State trace is {trace:.12f}, expected 1")

        lowest = float(hermitian_eigenvalues(m)[0])
        if lowest < -TOL_STRUCTURAL:
            raise NotPositive(f"State has eigenvalue {lowest:.3e}")

        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    @property
    def qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending spectrum"""
        return hermitian_eigenvalues(self.matrix)

    def is_diagonal(self, tol: float = TOL_STRUCTURAL) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.max(np.abs(off)) <= tol)


def local_hamiltonian_2q() -> ComplexMatrix:
    """(I - sigma_z)/2 = diag(0, 1): |0> ground, |1> excited"""
    return (IDENTITY_2 - SIGMA_Z) / 2


def local_hamiltonian_3q() -> ComplexMatrix:
    """(I + sigma_z)/2 = diag(1, 0)"""
    return (IDENTITY_2 + SIGMA_Z) / 2


def thermal_state(beta: float, h: ComplexMatrix, labels: Optional[Sequence[str]] = None) -> DensityMatrix:
    """
    Gibbs state exp(-beta*H)/Z

    Args:
        beta: Inverse temperature; negative values describe population inversion
        h: Hermitian Hamiltonian
        labels: Optional qubit labeling of the result

    Returns:
        Validated DensityMatrix
    """
    if not math.isfinite(beta):
        raise DomainError(f"Inverse temperature must be finite, got {beta}")

    eig = hermitian_eigendecomposition(h)
    # Shift by the extreme eigenvalue so the largest weight is exactly 1
    shift = eig.eigenvalues[0] if beta >= 0 else eig.eigenvalues[-1]
    weights = np.exp(-beta * (eig.eigenvalues - shift))
    weights = weights / np.sum(weights)
    v = eig.eigenvectors
    rho = (v * weights) @ v.conj().T
    return DensityMatrix(rho, tuple(labels) if labels else ())


def two_qubit_initial(beta_a: float, beta_b: float, alpha: complex) -> DensityMatrix:
    """
    rho_A(beta_a) ⊗ rho_B(beta_b) + alpha|01><10| + conj(alpha)|10><01|

    Raises NotPositive when alpha is too large for the chosen temperatures.
    """
    h = local_hamiltonian_2q()
    product = kronecker_product(thermal_state(beta_a, h).matrix, thermal_state(beta_b, h).matrix)
    chi = np.zeros((4, 4), dtype=complex)
    chi[0b01, 0b10] = alpha
    chi[0b10, 0b01] = np.conj(alpha)
    try:
        return DensityMatrix(product + chi, ("A", "B"))
    except NotPositive as e:
        raise NotPositive(f"alpha={alpha} does not give a positive state: {e}") from e


def correlated_pair_state(lambda_a: float, lambda_c: float, gamma: float) -> DensityMatrix:
    """
    Two-qubit state over (A, C) with marginals diag(lambda_a, 1-lambda_a) and
    diag(lambda_c, 1-lambda_c) and coherences on both excitation blocks.
    Its spectrum is {gamma, 1-gamma, 0, 0}.
    """
    coherence_arg = gamma ** 2 - (lambda_c - lambda_a) ** 2
    low = lambda_a + lambda_c - gamma
    high = 2.0 - lambda_a - lambda_c - gamma
    for name, value in (("gamma^2 - (lambda_c - lambda_a)^2", coherence_arg),
                        ("lambda_a + lambda_c - gamma", low),
                        ("2 - lambda_a - lambda_c - gamma", high)):
        if value < -TOL_STRUCTURAL:
            raise DomainError(f"{name} = {value:.6g} is negative")
    # Rounding on a boundary can leave these a hair below zero
    coherence_arg, low, high = max(coherence_arg, 0.0), max(low, 0.0), max(high, 0.0)

    rho = np.zeros((4, 4), dtype=complex)
    rho[0b10, 0b10] = gamma + lambda_c - lambda_a
    rho[0b01, 0b01] = gamma - lambda_c + lambda_a
    rho[0b10, 0b01] = rho[0b01, 0b10] = math.sqrt(coherence_arg)
    rho[0b00, 0b00] = low
    rho[0b11, 0b11] = high
    rho[0b00, 0b11] = rho[0b11, 0b00] = math.sqrt(low * high)
    return DensityMatrix(rho / 2, ("A", "C"))


def three_qubit_initial(t_b: float, lambda_a: float, lambda_c: float, gamma: float) -> DensityMatrix:
    """
    rho_AC ⊗ rho_B(T_B), returned over labels (A, B, C)

    Args:
        t_b: Temperature of qubit B
        lambda_a: Population of |0> in the marginal of A
        lambda_c: Population of |0> in the marginal of C
        gamma: Coherence parameter (largest eigenvalue of rho_AC)
    """
    if t_b == 0 or not math.isfinite(t_b):
        raise DomainError(f"Temperature of B must be finite and nonzero, got {t_b}")

    rho_ac = correlated_pair_state(lambda_a, lambda_c, gamma)
    rho_b = thermal_state(1.0 / t_b, local_hamiltonian_3q(), ("B",))
    joint = DensityMatrix(kronecker_product(rho_ac.matrix, rho_b.matrix), ("A", "C", "B"))
    logger.debug(f"Built three-qubit state (T_B={t_b}, lambda_a={lambda_a}, lambda_c={lambda_c}, gamma={gamma})")
    return reorder_qubits(joint, joint.labels, ("A", "B", "C"))


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """
    Reduced state on the kept labels

    Args:
        rho: State to reduce
        keep: Labels to keep; the result keeps their order within rho.labels

    Returns:
        DensityMatrix over the kept labels
    """
    keep = set(keep)
    unknown = keep - set(rho.labels)
    if unknown:
        raise UnknownLabel(f"Labels {sorted(unknown)} not in {rho.labels}")
    if not keep:
        raise LabelMismatch("Partial trace must keep at least one qubit")

    n = rho.qubits
    rows = list(string.ascii_lowercase[:n])
    cols = list(string.ascii_lowercase[n:2 * n])
    kept = [i for i, label in enumerate(rho.labels) if label in keep]
    for i, label in enumerate(rho.labels):
        if label not in keep:
            cols[i] = rows[i]

    subscripts = "".join(rows) + "".join(cols) + "->" + \
        "".join(rows[i] for i in kept) + "".join(cols[i] for i in kept)
    tensor = rho.matrix.reshape([2] * (2 * n))
    dim = 2 ** len(kept)
    reduced = np.einsum(subscripts, tensor).reshape(dim, dim)
    return DensityMatrix(reduced, tuple(rho.labels[i] for i in kept))


def reorder_qubits(rho: DensityMatrix, order_from: Sequence[str], order_to: Sequence[str]) -> DensityMatrix:
    """Relabel basis order: returns P·rho·P† for the permutation order_from -> order_to"""
    order_from = tuple(order_from)
    order_to = tuple(order_to)
    if order_from != rho.labels:
        raise LabelMismatch(f"State is labeled {rho.labels}, not {order_from}")
    if sorted(order_from) != sorted(order_to) or len(set(order_to)) != len(order_to):
        raise LabelMismatch(f"{order_to} is not a permutation of {order_from}")

    n = rho.qubits
    axes = [order_from.index(label) for label in order_to]
    tensor = rho.matrix.reshape([2] * (2 * n)).transpose(axes + [a + n for a in axes])
    return DensityMatrix(tensor.reshape(rho.dim, rho.dim), order_to)
