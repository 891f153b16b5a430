"""Constants for the basket_miner package."""

from fractions import Fraction

DOMAIN = "basket_miner"

# Hash tree tuning
DEFAULT_BUCKET_COUNT = 8
DEFAULT_LEAF_SPLIT_THRESHOLD = 16

# Quantitative discretization
DEFAULT_PARTIAL_COMPLETENESS = Fraction(3, 2)
# max support defaults to this multiple of min support, capped at 1
DEFAULT_MAX_SUPPORT_FACTOR = 5

# 5% critical value of chi-squared with one degree of freedom
DEFAULT_CHI2_THRESHOLD = Fraction(384, 100)

# Oracles enumerate 2^n itemsets
ORACLE_MAX_ITEMS = 16

CONF_INPUT = "input"
CONF_MIN_SUPPORT = "min_support"
CONF_MIN_CONFIDENCE = "min_confidence"
CONF_MAX_SUPPORT = "max_support"
CONF_PARTIAL_COMPLETENESS = "partial_completeness"
CONF_DISCRETIZE = "discretize"
CONF_PARTITIONS = "partitions"
CONF_PARTITIONING = "partitioning"
CONF_TAXONOMY = "taxonomy"
CONF_TAXONOMY_INTERVALS = "taxonomy_intervals"
CONF_INTEREST = "interest"
CONF_CHI2_THRESHOLD = "chi2_threshold"
CONF_BUCKET_COUNT = "bucket_count"
CONF_LEAF_SPLIT_THRESHOLD = "leaf_split_threshold"
CONF_NAIVE_COUNTING = "naive_counting"
CONF_FORMAT = "format"
CONF_THREADS = "threads"
CONF_SEED = "seed"
CONF_BISECT = "bisect"
CONF_DIRECTION = "direction"
CONF_RANDOM_TRIALS = "random_trials"

DISCRETIZE_NONE = "none"
DISCRETIZE_EQUI_WIDTH = "equi-width"
DISCRETIZE_EQUI_DEPTH = "equi-depth"
DISCRETIZE_MODES = (DISCRETIZE_NONE, DISCRETIZE_EQUI_WIDTH, DISCRETIZE_EQUI_DEPTH)

INTEREST_NONE = "none"
INTEREST_LIFT = "lift"
INTEREST_CHI2 = "chi2"
INTEREST_MODES = (INTEREST_NONE, INTEREST_LIFT, INTEREST_CHI2)

FORMAT_TABLE = "table"
FORMAT_CSV = "csv"
FORMAT_JSONL = "jsonl"
OUTPUT_FORMATS = (FORMAT_TABLE, FORMAT_CSV, FORMAT_JSONL)

DIRECTION_Q2T = "q2t"
DIRECTION_T2Q = "t2q"

# leaf intervals mined when a tree taxonomy is read as a numbered quantity
TAXONOMY_INTERVALS_TREE = "tree"
TAXONOMY_INTERVALS_ALL = "all"
TAXONOMY_INTERVAL_MODES = (TAXONOMY_INTERVALS_TREE, TAXONOMY_INTERVALS_ALL)

CSV_COLUMNS = (
    "antecedent",
    "consequent",
    "support_num",
    "support_den",
    "conf_num",
    "conf_den",
    "lift",
    "chi2",
)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_DATA_ERROR = 3
EXIT_ORACLE_MISMATCH = 4
