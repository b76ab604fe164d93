from typing import Final


DEFAULT_ALPHA: Final = 2.0

# Case-study costs of a false alarm and of a threshold change.
DEFAULT_FP_COST: Final = 8.0
DEFAULT_CHANGE_COST: Final = 10.0

# Exponential fit through the case study's published curve endpoints.
DEFAULT_FIT_FP0: Final = 0.95
DEFAULT_FIT_MAX_DELAY: Final = 23
DEFAULT_FIT_FP_MAX: Final = 0.02

ORACLE_MAX_HORIZON: Final = 12
ORACLE_MAX_SCHEDULES: Final = 10**6

DEFAULT_NORMAL_MEAN: Final = -1.0
DEFAULT_ATTACK_MEAN: Final = 1.0
DEFAULT_NOISE_STD: Final = 1.0
DEFAULT_ETA_GRID: Final = "0:20:2"
DEFAULT_TRIALS: Final = 10_000
DEFAULT_RUN_LENGTH: Final = 200
DEFAULT_SEED: Final = 20180101
SIM_BATCH_SIZE: Final = 500

EXIT_OK: Final = 0
EXIT_PARSE: Final = 2
EXIT_CONFIG: Final = 3
EXIT_INFEASIBLE: Final = 4

LOG_FORMAT: Final = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Caps solved together in one vectorised cost table.
DP_CAP_BATCH_SIZE: Final = 64
