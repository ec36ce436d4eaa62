"""
Scalar diagnostics: Uhlmann fidelity, Bures distance, permutation-search
state complexity, Wootters concurrence, entanglement of formation, internal
energy and heat.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import entr

from constants import (
    BURES_DIAMETER,
    MAX_COMPLEXITY_DIM,
    TOL_ACCUMULATION,
    TOL_DERIVED,
    TOL_STRUCTURAL,
)
from errors import (
    DimensionMismatch,
    DomainError,
    NonRealEnergy,
    NotHermitian,
    TooFewSamples,
    UnsupportedDim,
    WrongArity,
)
from linalg_core import (
    SIGMA_Y,
    ComplexMatrix,
    as_square,
    clamp_psd_spectrum,
    hermitian_eigenvalues,
    is_hermitian,
    kronecker_product,
    psd_sqrt,
)
from quantum_state import DensityMatrix, partial_trace

logger = logging.getLogger(__name__)

SIGMA_YY = kronecker_product(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Descending eigenvalues of a state, clamped to [0, 1] after validation"""

    values: np.ndarray

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=float))[::-1]
        if values.size == 0:
            raise DomainError("Spectrum is empty")
        if values[-1] < -TOL_STRUCTURAL or values[0] > 1 + TOL_STRUCTURAL:
            raise DomainError(f"Spectrum {values} leaves [0, 1]")
        if abs(values.sum() - 1.0) > TOL_DERIVED:
            raise DomainError(f"Spectrum sums to {values.sum():.12f}")
        values = np.clip(values, 0.0, 1.0)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, rho: DensityMatrix) -> "Spectrum":
        return cls(rho.eigenvalues())

    @property
    def dim(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class ComplexityResult:
    """
    Minimal Bures distance to the diagonal states sharing the spectrum

    Attributes:
        complexity: The minimum over `distances`
        argmin_permutation: Spectrum index placed on each diagonal slot by the winner
        distances: Distance to every candidate, in candidate order
        permutations: Candidate permutations in lexicographic order
    """

    complexity: float
    argmin_permutation: Tuple[int, ...]
    distances: np.ndarray
    permutations: Tuple[Tuple[int, ...], ...]


def _bures_from_fidelity_root(root_fidelity, trace_sum: float = 2.0):
    """sqrt(Tr rho1 + Tr rho2 - 2 sqrt(F)) with the radicand clamped at 0"""
    return np.sqrt(np.maximum(trace_sum - 2.0 * np.asarray(root_fidelity), 0.0))


def fidelity_root(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """
    sqrt(F) = Tr sqrt(sqrt(rho2) rho1 sqrt(rho2))

    Args:
        rho1: First state
        rho2: Second state (same dimension)

    Returns:
        Root fidelity in [0, 1] up to roundoff
    """
    if rho1.dim != rho2.dim:
        raise DimensionMismatch(f"Cannot compare states of dim {rho1.dim} and {rho2.dim}")
    root2 = psd_sqrt(rho2.matrix)
    inner = root2 @ rho1.matrix @ root2
    inner = (inner + inner.conj().T) / 2
    values = clamp_psd_spectrum(hermitian_eigenvalues(inner))
    return float(np.sum(np.sqrt(values)))


def bures_distance(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """D_B = sqrt(2 - 2 sqrt(F)) for unit-trace states"""
    if rho1.dim != rho2.dim:
        raise DimensionMismatch(f"Cannot compare states of dim {rho1.dim} and {rho2.dim}")
    if np.max(np.abs(rho1.matrix - rho2.matrix)) <= TOL_ACCUMULATION:
        return 0.0
    return float(_bures_from_fidelity_root(fidelity_root(rho1, rho2)))


@lru_cache(maxsize=None)
def _permutations(dim: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(dim)))


def _degeneracy_classes(values: np.ndarray) -> Tuple[int, ...]:
    """Class id per descending eigenvalue; neighbours within 1e-9 share a class"""
    classes = [0]
    for prev, cur in zip(values[:-1], values[1:]):
        classes.append(classes[-1] + (1 if prev - cur > TOL_DERIVED else 0))
    return tuple(classes)


def _distinct_arrangements(spectrum: Spectrum) -> List[Tuple[int, ...]]:
    if spectrum.dim > MAX_COMPLEXITY_DIM:
        raise UnsupportedDim(f"Permutation search is limited to dim <= {MAX_COMPLEXITY_DIM}, got {spectrum.dim}")
    classes = _degeneracy_classes(spectrum.values)
    seen = set()
    kept = []
    for perm in _permutations(spectrum.dim):
        key = tuple(classes[i] for i in perm)
        if key not in seen:
            seen.add(key)
            kept.append(perm)
    return kept


def zero_complexity_set(spectrum: Spectrum) -> List[DensityMatrix]:
    """
    All distinct diagonal states diag(l_p(1), ..., l_p(dim)) over permutations p

    Degenerate spectra yield each distinct diagonal once, in lexicographic
    permutation order.
    """
    return [DensityMatrix(np.diag(spectrum.values[list(perm)]).astype(complex))
            for perm in _distinct_arrangements(spectrum)]


def _diagonal_root_fidelities(matrix: ComplexMatrix, diagonals: np.ndarray) -> np.ndarray:
    """
    sqrt(F)(rho, diag(q)) for a stack of diagonals q

    With sigma = diag(q), sqrt(sigma) rho sqrt(sigma) is rho scaled
    element-wise by outer(sqrt(q), sqrt(q)), so the whole batch needs only
    one stacked eigenvalue call.
    """
    roots = np.sqrt(diagonals)
    stack = matrix[np.newaxis, :, :] * roots[:, :, np.newaxis] * roots[:, np.newaxis, :]
    values = hermitian_eigenvalues(stack)
    return np.sum(np.sqrt(np.clip(values, 0.0, None)), axis=-1)


def state_complexity(rho: DensityMatrix) -> ComplexityResult:
    """
    Minimal Bures distance from rho to the diagonal states with its spectrum

    The spectrum is recomputed from rho on every call. Ties go to the
    lexicographically first permutation.
    """
    spectrum = Spectrum.of(rho)
    perms = _distinct_arrangements(spectrum)
    diagonals = spectrum.values[np.array(perms)]

    distances = _bures_from_fidelity_root(_diagonal_root_fidelities(rho.matrix, diagonals))
    # A candidate equal to rho is at distance exactly 0
    own = np.real(np.diag(rho.matrix))
    matches = np.max(np.abs(diagonals - own), axis=1) <= TOL_ACCUMULATION
    if matches.any() and rho.is_diagonal(TOL_ACCUMULATION):
        distances = np.where(matches, 0.0, distances)

    best = int(np.argmin(distances))
    complexity = float(min(distances[best], BURES_DIAMETER))
    return ComplexityResult(complexity, perms[best], distances, tuple(perms))


def concurrence(rho: DensityMatrix) -> float:
    """
    Wootters concurrence max(0, l1 - l2 - l3 - l4)

    l_i are the descending square roots of the eigenvalues of
    rho·(sigma_y⊗sigma_y)·rho*·(sigma_y⊗sigma_y), computed through the
    Hermitian similar matrix sqrt(rho)·rho_tilde·sqrt(rho).
    """
    if rho.qubits != 2:
        raise WrongArity(f"Concurrence needs a two-qubit state, got {rho.qubits} qubits")
    flipped = SIGMA_YY @ np.conj(rho.matrix) @ SIGMA_YY
    root = psd_sqrt(rho.matrix)
    inner = root @ flipped @ root
    values = hermitian_eigenvalues((inner + inner.conj().T) / 2)
    lam = np.sqrt(np.clip(values, 0.0, None))[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0))


def binary_entropy(x: float) -> float:
    """h(x) in bits with h(0) = h(1) = 0"""
    return float((entr(x) + entr(1.0 - x)) / math.log(2.0))


def entanglement_of_formation(c: float) -> float:
    """EoF = h(1/2 + sqrt(1 - C^2)/2), in ebits"""
    if not -TOL_DERIVED <= c <= 1.0 + TOL_DERIVED:
        raise DomainError(f"Concurrence {c} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 + 0.5 * math.sqrt(1.0 - c * c))


def internal_energy(rho: DensityMatrix, h: ComplexMatrix) -> float:
    """
    E = Tr(H·rho)

    Raises:
        NonRealEnergy: the trace has an imaginary part above 1e-10
    """
    h = as_square(h)
    if h.shape != rho.matrix.shape:
        raise DimensionMismatch(f"Hamiltonian {h.shape} does not act on state {rho.matrix.shape}")
    if not is_hermitian(h):
        raise NotHermitian("Energy Hamiltonian is not Hermitian")
    energy = np.trace(h @ rho.matrix)
    if abs(energy.imag) > TOL_STRUCTURAL:
        raise NonRealEnergy(f"Energy has imaginary part {energy.imag:.3e}")
    return float(energy.real)


def subsystem_energy(rho: DensityMatrix, label: str, h: ComplexMatrix) -> float:
    """Internal energy of one qubit, E_i = Tr(H_i rho_i)"""
    return internal_energy(partial_trace(rho, [label]), h)


def heat_flow(energies: Sequence[float]) -> np.ndarray:
    """Q_k = E(t_{k+1}) - E(t_k); positive means heat absorbed"""
    energies = np.asarray(energies, dtype=float)
    if energies.size < 2:
        raise TooFewSamples(f"Heat flow needs at least 2 samples, got {energies.size}")
    return np.diff(energies)


def effective_temperature(population_excited: float, gap: float = 1.0) -> float:
    """
    Local temperature of a two-level system, gap / ln(p_ground / p_excited)

    Returns +inf at equal populations, 0 in the ground state, negative under
    inversion and -0.0 when fully inverted.
    """
    p1 = float(population_excited)
    if not 0.0 <= p1 <= 1.0:
        raise DomainError(f"Population {p1} outside [0, 1]")
    p0 = 1.0 - p1
    if p1 == 0.0:
        return 0.0
    if p0 == 0.0:
        return -0.0
    if p0 == p1:
        return math.inf
    return gap / math.log(p0 / p1)
