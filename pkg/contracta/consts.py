# -*- coding: utf-8 -*-

SCHEMA_VERSION = "1.0"

# Metric kinds
METRIC_EUCLIDEAN = 'euclidean'
METRIC_CHEBYSHEV = 'chebyshev'
METRIC_MANHATTAN = 'manhattan'
METRIC_DISCRETE = 'discrete'
METRIC_KINDS = (METRIC_EUCLIDEAN, METRIC_CHEBYSHEV, METRIC_MANHATTAN, METRIC_DISCRETE)

# Sampler schemes
SCHEME_UNIFORM_BOX = 'uniform-box'
SCHEME_GAUSSIAN = 'gaussian-around-center'
SCHEME_ANNULUS = 'annulus'
SAMPLER_SCHEMES = (SCHEME_UNIFORM_BOX, SCHEME_GAUSSIAN, SCHEME_ANNULUS)

# Sampler sub-streams. Each purpose draws from its own Philox key so that
# adding draws for one purpose never shifts the samples of another.
STREAM_POINTS = 1
STREAM_PAIRS = 2
STREAM_TRIPLES = 3
STREAM_ANNULUS = 4
STREAM_STARTS = 6
STREAM_LADDER_BASE = 1 << 16
STREAM_MK_BASE = 1 << 24

SAMPLER_BLOCK_SIZE = 1024
ANNULUS_RETRY_FACTOR = 64

# Strictness levels of a weakly-type triple
STRICTNESS_THEOREM6 = 'theorem6'
STRICTNESS_DEFINITION4 = 'definition4'
STRICTNESS_LEVELS = (STRICTNESS_THEOREM6, STRICTNESS_DEFINITION4)

# Pair verdict states
HOLDS = 'holds'
VIOLATED = 'violated'
VACUOUS = 'vacuous'

# Modulus estimate verdicts
ESTIMATE_POSITIVE = 'positive'
ESTIMATE_FAILED = 'failed'
ESTIMATE_INCONCLUSIVE = 'inconclusive'
ESTIMATE_INFEASIBLE = 'infeasible'
ESTIMATE_SKIPPED = 'skipped'

# Picard verdicts
PICARD_CONVERGED = 'converged'
PICARD_MAX_ITER = 'max_iter_exceeded'
PICARD_DIVERGED = 'diverged'
PICARD_SELF_MAP_VIOLATION = 'self_map_violation'

# Defaults
DEFAULT_SEED = 0
DEFAULT_N_PAIRS = 100000
DEFAULT_SLACK = 0.0
DEFAULT_EPSILON_GRID = (0.25, 0.5, 1.0, 2.0)
DEFAULT_SHRINK_LEVELS = 8
DEFAULT_WIDTH_FACTOR = 2.0
DEFAULT_WORKERS = 1
DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100000
DEFAULT_DIVERGENCE_FACTOR = 1e6
DEFAULT_N_STARTS = 8
DEFAULT_N_TRIPLES = 10000
DEFAULT_LAMBDA_MARGIN = 1e-6
AGREEMENT_FACTOR = 10.0
TRIANGLE_ULP_SLACK = 4
DEFAULT_PROBE_LIMITS = (0.5, 1.0, 2.0)
DEFAULT_PROBE_HORIZON = 128
DEFAULT_OSCILLATION_STEPS = (1e-2, 1e-4, 1e-6, 1e-8)
OSCILLATION_TOLERANCE = 1e-6
TRACE_ITERATE_CAP = 1000

# For env var truth comparisons
env_truths = ("t", "T", "y", "Y", "1", "True", "true", "TRUE", "yes", "YES", 1, True)
