import logging
from dataclasses import dataclass
from typing import List, Tuple

from constants import (
    DEFAULT_GAMMA,
    DEFAULT_LAMBDA_A,
    DEFAULT_LAMBDA_C,
    DEFAULT_TAU_RANGE,
    DEFAULT_TEMP_B,
    DEFAULT_TRACE_STEPS,
)
from dynamics import evolve, interaction_hamiltonian_3q, propagators, time_grid
from errors import ConfigError
from experiment_selector import Experiment
from experiments._three_qubit import STATE_PARAMS, snapshot
from experiments.records import TimeSeriesRecord
from quantum_state import three_qubit_initial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThreeQubitTrace:
    """Time evolution at fixed coupling strengths (s = t = 1 by default)"""

    s: float = 1.0
    t: float = 1.0
    tau_range: Tuple[float, float] = DEFAULT_TAU_RANGE
    steps: int = DEFAULT_TRACE_STEPS
    lambda_a: float = DEFAULT_LAMBDA_A
    lambda_c: float = DEFAULT_LAMBDA_C
    gamma: float = DEFAULT_GAMMA
    temp_b: float = DEFAULT_TEMP_B

    def __post_init__(self):
        if self.steps < 2:
            raise ConfigError(f"steps must be at least 2, got {self.steps}", param="steps")
        if not self.tau_range[0] < self.tau_range[1]:
            raise ConfigError(f"tau range {self.tau_range} is degenerate", param="tau_max")


def run_three_qubit_trace(trace: ThreeQubitTrace) -> List[TimeSeriesRecord]:
    """
    Sample energies and pair complexities along tau

    Returns:
        One record per tau, `time` holding tau
    """
    rho0 = three_qubit_initial(trace.temp_b, trace.lambda_a, trace.lambda_c, trace.gamma)
    taus = time_grid(trace.tau_range[0], trace.tau_range[1], trace.steps)
    h = interaction_hamiltonian_3q(trace.t, trace.s)

    records = [TimeSeriesRecord(time=float(tau), **snapshot(evolve(rho0, u)))
               for tau, u in zip(taus, propagators(h, taus))]
    logger.debug(f"Three-qubit trace s={trace.s}, t={trace.t}: {len(records)} samples")
    return records


class ThreeQubitTraceExperiment(Experiment):
    """Synchronization of heat-flow and complexity turning points for fixed couplings"""

    EXPERIMENT_KIND = "three-qubit-trace"
    EXPERIMENT_NAME = "Three-Qubit Time Trace"
    EXPERIMENT_DESCRIPTION = "E_A, E_B, E_C and pair complexities along tau at fixed s, t"

    EXPERIMENT_PARAMS = {
        "s": {
            "value": 1.0,
            "type": "float",
            "description": "B-C coupling strength"
        },
        "t": {
            "value": 1.0,
            "type": "float",
            "description": "A-B coupling strength"
        },
        "tau_min": {
            "value": DEFAULT_TAU_RANGE[0],
            "type": "float",
            "description": "First evolution time"
        },
        "tau_max": {
            "value": DEFAULT_TAU_RANGE[1],
            "type": "float",
            "description": "Last evolution time"
        },
        "steps": {
            "value": DEFAULT_TRACE_STEPS,
            "type": "int",
            "description": "Number of samples (inclusive grid)"
        },
        **STATE_PARAMS
    }

    def __init__(self, params=None, jobs=1):
        super().__init__(params, jobs)
        self.trace = ThreeQubitTrace(
            s=self._get_param_value("s"),
            t=self._get_param_value("t"),
            tau_range=(self._get_param_value("tau_min"), self._get_param_value("tau_max")),
            steps=self._get_param_value("steps"),
            lambda_a=self._get_param_value("lambda_a"),
            lambda_c=self._get_param_value("lambda_c"),
            gamma=self._get_param_value("gamma"),
            temp_b=self._get_param_value("temp_b"),
        )

    def _run_experiment(self):
        return run_three_qubit_trace(self.trace)
