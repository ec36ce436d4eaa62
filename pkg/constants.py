import math

# Tolerance table
TOL_STRUCTURAL = 1e-10
TOL_DERIVED = 1e-9
TOL_ACCUMULATION = 1e-12

# Eigensolver
EIGEN_METHOD = "lapack"  # "lapack" or "jacobi"
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

# Largest state the permutation search accepts (8! candidates)
MAX_COMPLEXITY_DIM = 8
BURES_DIAMETER = math.sqrt(2.0)

# Arrow diagnostic
DEAD_BAND = 1e-6
HOT_REFERENCES = ("instantaneous", "initial")

# Output
CSV_SIGNIFICANT_DIGITS = 12
TWO_QUBIT_COLUMNS = ["time", "e_a", "e_b", "complexity", "concurrence", "eof"]
GRID_COLUMNS = ["t", "s", "e_a", "e_b", "e_c", "c_ab", "c_bc", "c_ac"]
TRACE_COLUMNS = ["tau", "e_a", "e_b", "e_c", "c_ab", "c_bc", "c_ac"]

# Parameter choices of the reference experiments
DEFAULT_BETA_A = 1.0
DEFAULT_BETA_B = 2.0
DEFAULT_T_START = 0.0
DEFAULT_T_END = 1.0
DEFAULT_STEPS = 201
DEFAULT_TEMP_B = 2.0
DEFAULT_LAMBDA_A = 0.15
DEFAULT_LAMBDA_C = 0.3
DEFAULT_GAMMA = 0.4
DEFAULT_TAU = 1.0
DEFAULT_RANGE = (-10.0, 10.0)
DEFAULT_RESOLUTION = 201
DEFAULT_TAU_RANGE = (0.0, 10.0)
DEFAULT_TRACE_STEPS = 501
TEST_RESOLUTION = 51
