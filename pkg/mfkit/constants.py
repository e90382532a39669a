"""Application constants.

Shared names and defaults used throughout the toolkit.
"""

# Variables
Y_NAMES = ("Y1", "Y2", "Y3", "Y4")
EPSILON_SYMBOL = "e"
U_PREFIX = "u"
V_PREFIX = "v"

# Polynomials
ZERO_POLY_DEGREE = -1  # degree reported for the zero polynomial
MONOMIAL_ORDERS = ("lex", "grevlex")
DEFAULT_EQUIV_ORDER = "grevlex"

# Classification
DEFAULT_AUDIT_SAMPLE = 5
DEFAULT_SEED = 0
DEFAULT_JOBS = 1
TWO_GENERATED_CLASSES = 54
THREE_GENERATED_CLASSES = 72

# Exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2

# Logging
DEFAULT_LOG_LEVEL = "INFO"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
LOG_ROTATION = "10 MB"
LOG_RETENTION = "1 week"
