import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from constants import (
    DEFAULT_GAMMA,
    DEFAULT_LAMBDA_A,
    DEFAULT_LAMBDA_C,
    DEFAULT_RANGE,
    DEFAULT_RESOLUTION,
    DEFAULT_TAU,
    DEFAULT_TEMP_B,
)
from dynamics import PropagatorSpec, evolve, interaction_hamiltonian_3q, propagator
from errors import ConfigError
from experiment_selector import Experiment
from experiments._three_qubit import STATE_PARAMS, snapshot
from experiments.records import GridRecord
from quantum_state import DensityMatrix, three_qubit_initial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThreeQubitGrid:
    """Coupling-strength sweep at fixed evolution time tau"""

    tau: float = DEFAULT_TAU
    s_range: Tuple[float, float] = DEFAULT_RANGE
    t_range: Tuple[float, float] = DEFAULT_RANGE
    resolution: int = DEFAULT_RESOLUTION
    lambda_a: float = DEFAULT_LAMBDA_A
    lambda_c: float = DEFAULT_LAMBDA_C
    gamma: float = DEFAULT_GAMMA
    temp_b: float = DEFAULT_TEMP_B

    def __post_init__(self):
        if self.resolution < 2:
            raise ConfigError(f"resolution must be at least 2, got {self.resolution}", param="resolution")
        if not self.s_range[0] < self.s_range[1]:
            raise ConfigError(f"s range {self.s_range} is degenerate", param="s_max")
        if not self.t_range[0] < self.t_range[1]:
            raise ConfigError(f"t range {self.t_range} is degenerate", param="t_max")

    def s_values(self) -> np.ndarray:
        return np.linspace(self.s_range[0], self.s_range[1], self.resolution)

    def t_values(self) -> np.ndarray:
        return np.linspace(self.t_range[0], self.t_range[1], self.resolution)

    def initial_state(self) -> DensityMatrix:
        return three_qubit_initial(self.temp_b, self.lambda_a, self.lambda_c, self.gamma)


def grid_cell(rho0: DensityMatrix, t: float, s: float, tau: float) -> GridRecord:
    """Evolve rho0 under exp(-i(t·H_AB + s·H_BC)·tau) and record the cell diagnostics"""
    u = propagator(PropagatorSpec(interaction_hamiltonian_3q(t, s), tau))
    return GridRecord(s=float(s), t=float(t), **snapshot(evolve(rho0, u)))


def run_three_qubit_grid(grid: ThreeQubitGrid, jobs: int = 1) -> List[GridRecord]:
    """
    Sweep the (t, s) plane

    Args:
        grid: Sweep parameters
        jobs: Number of worker threads evaluating rows

    Returns:
        Records in row-major order, t outer and s inner, independent of jobs
    """
    rho0 = grid.initial_state()
    s_values = grid.s_values()

    def row(t):
        return [grid_cell(rho0, t, s, grid.tau) for s in s_values]

    t_values = grid.t_values()
    if jobs > 1:
        # map() yields rows in submission order whatever the completion order
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(row, t_values))
    else:
        rows = [row(t) for t in t_values]

    logger.debug(f"Grid sweep finished: {grid.resolution}x{grid.resolution} cells, tau={grid.tau}")
    return [record for cells in rows for record in cells]


class ThreeQubitGridExperiment(Experiment):
    """Energies and pair complexities over the coupling plane at fixed tau"""

    EXPERIMENT_KIND = "three-qubit-grid"
    EXPERIMENT_NAME = "Three-Qubit Coupling Sweep"
    EXPERIMENT_DESCRIPTION = "E_A, E_B, E_C and complexities of rho_AB, rho_BC, rho_AC over (s, t) at fixed tau"

    EXPERIMENT_PARAMS = {
        "tau": {
            "value": DEFAULT_TAU,
            "type": "float",
            "description": "Evolution time"
        },
        "s_min": {
            "value": DEFAULT_RANGE[0],
            "type": "float",
            "description": "Lowest B-C coupling strength"
        },
        "s_max": {
            "value": DEFAULT_RANGE[1],
            "type": "float",
            "description": "Highest B-C coupling strength"
        },
        "t_min": {
            "value": DEFAULT_RANGE[0],
            "type": "float",
            "description": "Lowest A-B coupling strength"
        },
        "t_max": {
            "value": DEFAULT_RANGE[1],
            "type": "float",
            "description": "Highest A-B coupling strength"
        },
        "resolution": {
            "value": DEFAULT_RESOLUTION,
            "type": "int",
            "description": "Grid points per axis"
        },
        **STATE_PARAMS
    }

    def __init__(self, params=None, jobs=1):
        super().__init__(params, jobs)
        self.grid = ThreeQubitGrid(
            tau=self._get_param_value("tau"),
            s_range=(self._get_param_value("s_min"), self._get_param_value("s_max")),
            t_range=(self._get_param_value("t_min"), self._get_param_value("t_max")),
            resolution=self._get_param_value("resolution"),
            lambda_a=self._get_param_value("lambda_a"),
            lambda_c=self._get_param_value("lambda_c"),
            gamma=self._get_param_value("gamma"),
            temp_b=self._get_param_value("temp_b"),
        )

    def _run_experiment(self):
        return run_three_qubit_grid(self.grid, self.jobs)
