import os

TOOL_VERSION = '1.0.0'

# Reduction constant c, any rational strictly inside (1, 2)
DEFAULT_C = os.environ.get('PLSLAB_C', '3/2')

# Eigenvalue truncation / rank tolerance for the embedding
DEFAULT_TOL = float(os.environ.get('PLSLAB_TOL', '1e-9'))

# Maximum number of feasible solutions the oracle will scan
DEFAULT_SIZE_CAP = int(os.environ.get('PLSLAB_SIZE_CAP', str(2 ** 20)))

# Instances up to this many solutions also check local_search from every start
ENGINE_CHECK_CAP = int(os.environ.get('PLSLAB_ENGINE_CAP', str(2 ** 16)))

DEFAULT_SEED = int(os.environ.get('PLSLAB_SEED', '0'))

# Warn when the smallest distance gap is within this factor of the tolerance
GAP_WARNING_FACTOR = 100

# Random campaign family
CAMPAIGN_INSTANCES = 200
CAMPAIGN_MAX_VARIABLES = 5
CAMPAIGN_MIN_CLAUSES = 2
CAMPAIGN_MAX_CLAUSES = 8
CAMPAIGN_WEIGHT_CAP = 9
CAMPAIGN_WORKERS = int(os.environ.get('PLSLAB_WORKERS', '4'))
