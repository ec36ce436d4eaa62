import logging
from dataclasses import dataclass
from typing import List

from constants import DEFAULT_BETA_A, DEFAULT_BETA_B, DEFAULT_STEPS, DEFAULT_T_END, DEFAULT_T_START
from dynamics import effective_hamiltonian_2q, evolve, propagators, time_grid
from errors import ConfigError
from experiment_selector import Experiment
from experiments.records import TimeSeriesRecord
from metrics import concurrence, entanglement_of_formation, state_complexity, subsystem_energy
from quantum_state import local_hamiltonian_2q, two_qubit_initial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoQubitScenario:
    """Initial temperatures, correlation amplitude and sampling grid of a two-qubit run"""

    beta_a: float = DEFAULT_BETA_A
    beta_b: float = DEFAULT_BETA_B
    alpha: complex = 0j
    t_start: float = DEFAULT_T_START
    t_end: float = DEFAULT_T_END
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if self.steps < 2:
            raise ConfigError(f"steps must be at least 2, got {self.steps}", param="steps")
        if not self.t_start < self.t_end:
            raise ConfigError(f"t_start ({self.t_start}) must be below t_end ({self.t_end})", param="t_end")

    @property
    def hot_label(self) -> str:
        """Subsystem with the higher initial temperature (lower beta)"""
        return "A" if self.beta_a <= self.beta_b else "B"


def run_two_qubit(scenario: TwoQubitScenario) -> List[TimeSeriesRecord]:
    """
    Evolve rho_AB^0 under H_AB^eff and sample energies, complexity and entanglement

    Args:
        scenario: Run parameters

    Returns:
        One TimeSeriesRecord per grid time, in time order
    """
    rho0 = two_qubit_initial(scenario.beta_a, scenario.beta_b, scenario.alpha)
    h_local = local_hamiltonian_2q()
    times = time_grid(scenario.t_start, scenario.t_end, scenario.steps)

    records = []
    for t, u in zip(times, propagators(effective_hamiltonian_2q(), times)):
        rho = evolve(rho0, u)
        c = concurrence(rho)
        records.append(TimeSeriesRecord(
            time=float(t),
            e_a=subsystem_energy(rho, "A", h_local),
            e_b=subsystem_energy(rho, "B", h_local),
            complexity=state_complexity(rho).complexity,
            concurrence=c,
            eof=entanglement_of_formation(c),
        ))

    logger.debug(f"Two-qubit run alpha={scenario.alpha}: {len(records)} samples")
    return records


class TwoQubitExperiment(Experiment):
    """
    Heat exchange between two qubits prepared at different temperatures,
    optionally with an initial correlation term alpha|01><10| + h.c.
    """

    EXPERIMENT_KIND = "two-qubit"
    EXPERIMENT_NAME = "Two-Qubit Heat Exchange"
    EXPERIMENT_DESCRIPTION = "Energies, state complexity and concurrence of rho_AB(t) under H_AB^eff"

    EXPERIMENT_PARAMS = {
        "beta_a": {
            "value": DEFAULT_BETA_A,
            "type": "float",
            "description": "Initial inverse temperature of qubit A"
        },
        "beta_b": {
            "value": DEFAULT_BETA_B,
            "type": "float",
            "description": "Initial inverse temperature of qubit B"
        },
        "alpha": {
            "value": 0j,
            "type": "complex",
            "description": "Correlation amplitude (a+bi, Mi or M@theta)"
        },
        "t_start": {
            "value": DEFAULT_T_START,
            "type": "float",
            "description": "First sample time"
        },
        "t_end": {
            "value": DEFAULT_T_END,
            "type": "float",
            "description": "Last sample time"
        },
        "steps": {
            "value": DEFAULT_STEPS,
            "type": "int",
            "description": "Number of samples (inclusive grid)"
        }
    }

    def __init__(self, params=None, jobs=1):
        super().__init__(params, jobs)
        self.scenario = TwoQubitScenario(
            beta_a=self._get_param_value("beta_a"),
            beta_b=self._get_param_value("beta_b"),
            alpha=self._get_param_value("alpha"),
            t_start=self._get_param_value("t_start"),
            t_end=self._get_param_value("t_end"),
            steps=self._get_param_value("steps"),
        )

    def _run_experiment(self):
        return run_two_qubit(self.scenario)
