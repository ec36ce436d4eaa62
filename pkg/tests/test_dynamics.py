import math

import numpy as np
import pytest
import scipy.linalg

from conftest import random_density, random_hermitian
from dynamics import (
    PropagatorSpec,
    effective_hamiltonian_2q,
    evolve,
    exchange_hamiltonian,
    interaction_hamiltonian_3q,
    propagator,
    propagators,
    time_grid,
)
from errors import DimensionMismatch, DomainError, NotHermitian, NotUnitary
from linalg_core import (
    IDENTITY_2,
    SIGMA_Z,
    commutator,
    hermitian_eigendecomposition,
    is_hermitian,
    kronecker_product,
)
from metrics import subsystem_energy
from quantum_state import local_hamiltonian_2q, two_qubit_initial


def test_effective_hamiltonian_entries():
    h = effective_hamiltonian_2q()
    assert is_hermitian(h)
    assert h[1, 2] == pytest.approx(1j * math.pi)
    assert h[2, 1] == pytest.approx(-1j * math.pi)
    # Only the single-excitation block couples
    mask = np.ones((4, 4), dtype=bool)
    mask[1, 2] = mask[2, 1] = False
    np.testing.assert_allclose(h[mask], 0, atol=1e-15)


def test_exchange_hamiltonian_scale():
    np.testing.assert_allclose(exchange_hamiltonian() * math.pi, effective_hamiltonian_2q(), atol=1e-15)


def test_interaction_hamiltonian_3q_is_hermitian_and_linear():
    h = interaction_hamiltonian_3q(0.7, -1.3)
    assert is_hermitian(h)
    np.testing.assert_allclose(interaction_hamiltonian_3q(0, 0), np.zeros((8, 8)))
    np.testing.assert_allclose(
        interaction_hamiltonian_3q(2.0, 3.0),
        interaction_hamiltonian_3q(2.0, 0.0) + interaction_hamiltonian_3q(0.0, 3.0),
        atol=1e-15,
    )


def test_propagator_matches_expm(rng):
    h = random_hermitian(rng, 8)
    u = propagator(PropagatorSpec(h, 0.8))
    np.testing.assert_allclose(u, scipy.linalg.expm(-0.8j * h), atol=1e-10)


def test_propagator_zero_duration_is_identity(rng):
    np.testing.assert_allclose(propagator(PropagatorSpec(random_hermitian(rng, 4), 0.0)), np.eye(4), atol=1e-12)


def test_propagator_spec_validation():
    with pytest.raises(NotHermitian):
        PropagatorSpec(np.array([[0, 1], [0, 0]]), 1.0)
    with pytest.raises(DomainError):
        PropagatorSpec(np.eye(2), math.nan)


def test_propagators_match_single_builds(rng):
    h = random_hermitian(rng, 4)
    times = [0.0, 0.5, 1.7]
    for t, u in zip(times, propagators(h, times)):
        np.testing.assert_allclose(u, propagator(PropagatorSpec(h, t)), atol=1e-12)


def test_evolve_preserves_trace_and_spectrum(rng):
    rho = random_density(rng, 4)
    u = propagator(PropagatorSpec(random_hermitian(rng, 4), 1.3))
    out = evolve(rho, u)
    assert np.trace(out.matrix).real == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(out.eigenvalues(), rho.eigenvalues(), atol=1e-12)
    assert out.labels == rho.labels


def test_evolve_errors(rng):
    rho = random_density(rng, 4)
    with pytest.raises(DimensionMismatch):
        evolve(rho, np.eye(2))
    with pytest.raises(NotUnitary):
        evolve(rho, 2 * np.eye(4))


def test_half_period_swaps_populations():
    rho0 = two_qubit_initial(1.0, 2.0, 0)
    h_local = local_hamiltonian_2q()
    rho = evolve(rho0, propagator(PropagatorSpec(effective_hamiltonian_2q(), 0.5)))
    assert subsystem_energy(rho, "A", h_local) == pytest.approx(subsystem_energy(rho0, "B", h_local), abs=1e-12)
    assert subsystem_energy(rho, "B", h_local) == pytest.approx(subsystem_energy(rho0, "A", h_local), abs=1e-12)


def test_total_energy_is_conserved():
    rho0 = two_qubit_initial(1.0, 2.0, 0.1)
    h_local = local_hamiltonian_2q()
    total0 = subsystem_energy(rho0, "A", h_local) + subsystem_energy(rho0, "B", h_local)
    times = time_grid(0.0, 1.0, 11)
    for u in propagators(effective_hamiltonian_2q(), times):
        rho = evolve(rho0, u)
        total = subsystem_energy(rho, "A", h_local) + subsystem_energy(rho, "B", h_local)
        assert total == pytest.approx(total0, abs=1e-12)


def test_time_grid():
    grid = time_grid(0.0, 1.0, 201)
    assert grid.size == 201
    assert grid[0] == 0.0 and grid[-1] == 1.0
    assert grid[1] == pytest.approx(0.005)
    with pytest.raises(DomainError):
        time_grid(0.0, 1.0, 1)
    with pytest.raises(DomainError):
        time_grid(1.0, 1.0, 5)


def test_effective_hamiltonian_commutes_with_local_energy():
    h = local_hamiltonian_2q()
    total = kronecker_product(h, IDENTITY_2) + kronecker_product(IDENTITY_2, h)
    assert np.linalg.norm(commutator(effective_hamiltonian_2q(), total)) < 1e-12


def test_three_qubit_coupling_conserves_excitations(rng):
    number = sum(kronecker_product(kronecker_product(*ops[:2]), ops[2])
                 for ops in ((SIGMA_Z, IDENTITY_2, IDENTITY_2),
                             (IDENTITY_2, SIGMA_Z, IDENTITY_2),
                             (IDENTITY_2, IDENTITY_2, SIGMA_Z)))
    for t, s in rng.uniform(-10, 10, size=(20, 2)):
        assert np.linalg.norm(commutator(interaction_hamiltonian_3q(t, s), number)) < 1e-12


def test_three_qubit_coupling_spectrum_is_symmetric():
    eig = hermitian_eigendecomposition(interaction_hamiltonian_3q(1.0, 1.0))
    np.testing.assert_allclose(eig.eigenvalues, -eig.eigenvalues[::-1], atol=1e-12)
    v = eig.eigenvectors
    np.testing.assert_allclose((v * eig.eigenvalues) @ v.conj().T, interaction_hamiltonian_3q(1.0, 1.0), atol=1e-10)


def test_evolved_states_stay_valid(rng):
    # 500 states per system, each under the experiment Hamiltonian for a random duration
    for h in (effective_hamiltonian_2q(), interaction_hamiltonian_3q(*rng.uniform(-10, 10, size=2))):
        dim = h.shape[0]
        for _ in range(500):
            rho = random_density(rng, dim, rank=int(rng.integers(1, dim + 1)))
            out = evolve(rho, propagator(PropagatorSpec(h, float(rng.uniform(-5, 5)))))
            m = out.matrix
            assert np.max(np.abs(m - m.conj().T)) <= 1e-9
            assert np.trace(m).real == pytest.approx(1.0, abs=1e-9)
            assert out.eigenvalues()[0] >= -1e-9
            np.testing.assert_allclose(out.eigenvalues(), rho.eigenvalues(), atol=1e-9)
