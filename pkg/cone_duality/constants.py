import os
import sys

import dotenv

dotenv.load_dotenv()

# Reproducible default seed for every randomized command
DEFAULT_SEED = 1729
DEFAULT_SAMPLES = 10_000
DEFAULT_WORKERS = 4

# Relative tolerance for sampled inequalities, absolute tolerance for identities
INEQUALITY_TOL = 1e-9
IDENTITY_TOL = 1e-10

# Ceilings on CLI input; the exact algorithms are exponential in the dimension
MAX_AMBIENT_DIM = 10
MAX_FACETS = 40
MAX_GENERATORS = 40

# Entries of random rational instances are drawn from this closed integer range
INTEGER_RANGE = (-5, 5)

# Environment variable names
ENV_SEED = "CONEDUAL_SEED"
ENV_SAMPLES = "CONEDUAL_SAMPLES"
ENV_TOL = "CONEDUAL_TOL"
ENV_FORMAT = "CONEDUAL_FORMAT"
ENV_WORKERS = "CONEDUAL_WORKERS"
ENV_PROGRESS = "CONEDUAL_PROGRESS"

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

PROGRESS_ENABLED = os.getenv(ENV_PROGRESS, "true").lower() == "true" and sys.stderr.isatty()

# CLI exit codes
EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_PARSE_ERROR = 2
EXIT_SEMANTIC_ERROR = 3
