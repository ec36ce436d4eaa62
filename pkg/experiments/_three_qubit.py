"""State preparation and per-sample diagnostics shared by the three-qubit experiments."""

from typing import Dict

from constants import DEFAULT_GAMMA, DEFAULT_LAMBDA_A, DEFAULT_LAMBDA_C, DEFAULT_TEMP_B
from metrics import state_complexity, subsystem_energy
from quantum_state import DensityMatrix, local_hamiltonian_3q, partial_trace

STATE_PARAMS = {
    "lambda_a": {
        "value": DEFAULT_LAMBDA_A,
        "type": "float",
        "description": "Population of |0> in the marginal of A"
    },
    "lambda_c": {
        "value": DEFAULT_LAMBDA_C,
        "type": "float",
        "description": "Population of |0> in the marginal of C"
    },
    "gamma": {
        "value": DEFAULT_GAMMA,
        "type": "float",
        "description": "Coherence parameter of rho_AC"
    },
    "temp_b": {
        "value": DEFAULT_TEMP_B,
        "type": "float",
        "description": "Temperature of qubit B"
    }
}


def snapshot(rho: DensityMatrix) -> Dict[str, float]:
    """Per-qubit energies and the complexities of the three pair states"""
    h = local_hamiltonian_3q()
    return {
        "e_a": subsystem_energy(rho, "A", h),
        "e_b": subsystem_energy(rho, "B", h),
        "e_c": subsystem_energy(rho, "C", h),
        "c_ab": state_complexity(partial_trace(rho, "AB")).complexity,
        "c_bc": state_complexity(partial_trace(rho, "BC")).complexity,
        "c_ac": state_complexity(partial_trace(rho, "AC")).complexity,
    }
