"""Shared constants for hyperwalk."""

# Exhaustive regular-graph search is only supported up to this order
SEARCH_MAX_ORDER = 10

# Bose–Mesner products are materialized only for graphs up to this order
BOSE_MESNER_MAX_ORDER = 30

# Default truncation level for infinite graphs
DEFAULT_LAZY_LEVEL = 4

# Monte Carlo samples are drawn in fixed-size chunks, one random stream per chunk
MC_CHUNK_SIZE = 4096

# Default Monte Carlo settings
DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 7

# Exit codes
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_REFUSED = 2
EXIT_USAGE = 3
