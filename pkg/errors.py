"""Exception hierarchy for the simulator."""

from typing import Optional


class SimulationError(Exception):
    """Base class for every error raised by the simulator"""


class NotHermitian(SimulationError):
    """Input matrix is not Hermitian within tolerance"""


class NoConvergence(SimulationError):
    """Eigensolver exceeded its sweep budget"""


class NotPositive(SimulationError):
    """Matrix has an eigenvalue below the PSD tolerance"""


class NotUnitary(SimulationError):
    """Propagator fails the unitarity check"""


class NonRealEnergy(SimulationError):
    """Energy expectation value carries an imaginary part"""


class TooFewSamples(SimulationError):
    """Series is too short for the requested diagnostic"""


class UnsupportedDim(SimulationError):
    """Dimension outside the supported range"""


class WrongArity(SimulationError):
    """Operation requires a different number of qubits"""


class UnknownLabel(SimulationError):
    """Qubit label is not part of the state's labeling"""


class LabelMismatch(SimulationError):
    """Target labeling is not a permutation of the source labeling"""


class DimensionMismatch(SimulationError, ValueError):
    """Operands have incompatible dimensions"""


class DomainError(SimulationError, ValueError):
    """Argument outside the mathematical domain of the operation"""


class ConfigError(SimulationError, ValueError):
    """Invalid run configuration; `param` names the offending parameter when known"""

    def __init__(self, message: str, param: Optional[str] = None):
        super().__init__(message)
        self.param = param


class RecordIOError(SimulationError):
    """Record file could not be written or read back"""
