"""
skelmax system configuration
"""

# Eccentricity and exponent used when nothing else is given
DEFAULT_DELTA = '1/8'
DEFAULT_P = '2'

# Quadrature spacing is h = delta / 2**REFINEMENT
DEFAULT_REFINEMENT = 2

# Scaling experiments run at desk scale
DEFAULT_DELTAS = ['1/8', '1/16', '1/32', '1/64']
SCALING_REFINEMENT = 1
SCALING_MIN_POINTS = 3
SCALING_SLACK = 0.05
SCALING_MAX_RESIDUAL = 0.1
STABILITY_FACTOR = 2.0

# Exponent lists for the class scans
DEFAULT_P_LIST = ['4/3', '3/2', '2', '3']
DEFAULT_LIMIT_EXPONENTS = 7
LIMIT_GAP = 0.05

# Working constants, the theory gives none numerically
SELECTION_CONSTANT = 4.0
SUFFICIENT_CONSTANT = 16.0
BUCKLEY_CONSTANT = 8.0
LOCAL_DOMINATION_FACTOR = 3.0
EMBEDDING_BASE = 4.0

# Tolerances
RELATIVE_TOLERANCE = 1e-9
WITNESS_TOLERANCE = 1e-12
CANCELLATION_RATIO = 2.0 ** -20
UNDERFLOW_FLOOR = 1e-200

# Test function family
FAMILY_VERSION = 'skeleton-family/2'
FAMILY_SKELETONS = 24
FAMILY_BOXES = 50
FAMILY_FIELDS = 50
FAMILY_TRUNCATIONS = (1.0, 2.0, 4.0)
# Face planes of the union member share offsets modulo at most this
MAX_PLANE_MODULUS = 8

# Harness defaults
DEFAULT_SEED = 7
DEFAULT_SAMPLES = 50
NECESSARY_SAMPLES = 100
RANDOM_RHO_COUNT = 4
SELECTION_FAMILY_SIZES = [64, 256, 1024]

# Cube family limits for the Hardy-Littlewood baseline
BUCKLEY_REGION_SIDE = 2
CUBIC_SCALE = 3
BUCKLEY_WEIGHTS = ['twovalue:K=2', 'twovalue:K=4', 'twovalue:K=16']

# Threads
THREADS_ENV_VAR = 'SKELMAX_THREADS'
POINTS_PER_JOB = 256

# Report files
LEDGER_COLUMNS = ['check', 'params_digest', 'lhs', 'rhs', 'slack', 'pass', 'seconds']
LOAD_REPORT_COLUMNS = ['plane_key', 'count']
REPORT_FORMATS = ['csv', 'json']
GRID_HEADER_PREFIX = '#'

# Config files
CONFIG_TEMPLATE_EXT = '.j2'
FILE_LOADER_CONFIG_ALLOWED_EXT = ['.yml', '.yaml', '.json']

# Keys a config file may set, with the command line flag they override
CONFIG_FLAG_KEYS = {
    'check': '--check',
    'class': '--class',
    'p': '--p',
    'delta': '--delta',
    'deltas': '--deltas',
    'p_list': '--p-list',
    'weight': '--weight',
    'input': '--input',
    'operator': '--operator',
    'strategy': '--strategy',
    'seed': '--seed',
    'samples': '--samples',
    'threads': '--threads',
    'refinement': '--refinement',
    'z': '--z',
    'n': '--n',
    'k': '--k',
    'constant': '--constant',
    'count': '--count',
    'out': '--out',
    'format': '--format',
}

# Keys whose values are fractions such as 1/8 or 3/2
FRACTION_KEYS = ['delta', 'deltas', 'p', 'p_list']

# Choices validated before dispatch
SUBCOMMANDS = ['field', 'apconst', 'select', 'verify', 'scaling']
CONSTANT_CLASSES = ['cubic', 'skeleton', 'skeleton-local', 'a1', 'nonlinear']
CHECKS = ['local-domination', 'duality', 'sufficient-local', 'sufficient', 'necessary', 'embedding', 'buckley',
          'buckley-family', 'monotone', 'a1-limit', 'selection']
FIELD_OPERATORS = ['none', 'skeleton', 'hl']
SELECTION_STRATEGIES = ['greedy', 'random']

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
