"""Per-sample records emitted by the experiments."""

from dataclasses import dataclass
from typing import List, Optional

from constants import GRID_COLUMNS, TRACE_COLUMNS, TWO_QUBIT_COLUMNS


@dataclass(frozen=True)
class TimeSeriesRecord:
    """
    One evolution sample

    Two-qubit runs fill `complexity`, `concurrence` and `eof`; three-qubit
    traces fill `e_c` and the three pair complexities.
    """

    time: float
    e_a: float
    e_b: float
    complexity: Optional[float] = None
    concurrence: Optional[float] = None
    eof: Optional[float] = None
    e_c: Optional[float] = None
    c_ab: Optional[float] = None
    c_bc: Optional[float] = None
    c_ac: Optional[float] = None

    @property
    def is_three_qubit(self) -> bool:
        return self.e_c is not None

    def columns(self) -> List[str]:
        return TRACE_COLUMNS if self.is_three_qubit else TWO_QUBIT_COLUMNS

    def values(self) -> List[float]:
        if self.is_three_qubit:
            return [self.time, self.e_a, self.e_b, self.e_c, self.c_ab, self.c_bc, self.c_ac]
        return [self.time, self.e_a, self.e_b, self.complexity, self.concurrence, self.eof]


@dataclass(frozen=True)
class GridRecord:
    """One (s, t) cell of the three-qubit sweep"""

    s: float
    t: float
    e_a: float
    e_b: float
    e_c: float
    c_ab: float
    c_bc: float
    c_ac: float

    def columns(self) -> List[str]:
        return GRID_COLUMNS

    def values(self) -> List[float]:
        return [self.t, self.s, self.e_a, self.e_b, self.e_c, self.c_ab, self.c_bc, self.c_ac]
