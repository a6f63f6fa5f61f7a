"""Parameters for deuq which should not be changed by the user.

Parameters that are here are used throughout the codebase and are stated here for easy reference.
Additional parameters that are more narrowly scoped are defined in the appropriate modules.

Changing these parameters may have unintended consequences and should only be done
by developers who understand the codebase.
"""

VARIANCE_FLOOR: float = 1e-6
"""Added to softplus of the variance head so predicted variances stay strictly positive."""

HALF_LOG_2PI: float = 0.9189385332046727
"""Constant term of the Gaussian negative log-likelihood, ½·ln(2π)."""

OPTIMIZERS: list[str] = ["sgd", "rmsprop", "adagrad", "adam", "adadelta", "adamax", "nadam"]
"""Optimizer names in the fixed order used for one-hot encoding."""

ADAM_BETA_1: float = 0.9
ADAM_BETA_2: float = 0.999
ADAM_EPSILON: float = 1e-8
"""Shared by adam, adamax and nadam."""

RMSPROP_RHO: float = 0.9
RMSPROP_EPSILON: float = 1e-7

ADADELTA_RHO: float = 0.95
ADADELTA_EPSILON: float = 1e-7

ADAGRAD_EPSILON: float = 1e-7

LR_REDUCE_FACTOR: float = 0.5
"""Learning rate multiplier applied when validation loss plateaus."""

MIN_LEARNING_RATE: float = 1e-6

MIN_IMPROVEMENT: float = 1e-4
"""Validation NLL must drop by more than this to count as an improvement."""

LR_LIMITS: tuple[float, float] = (1e-4, 1e-1)
"""Range a training learning rate must fall in."""

PATIENCE_REDUCE_LR_LIMITS: tuple[int, int] = (10, 20)
PATIENCE_EARLY_STOP_LIMITS: tuple[int, int] = (20, 30)

ACTIVATIONS: list[str] = [
    "elu",
    "gelu",
    "hard_sigmoid",
    "linear",
    "relu",
    "selu",
    "sigmoid",
    "softplus",
    "softsign",
    "swish",
    "tanh",
]
"""Activation names in the order used by the layer-category encoding."""

UNITS_CHOICES: list[int] = list(range(16, 257, 16))

MAX_SKIP_BACK: int = 3
"""Maximum number of non-consecutive predecessors a variable node can receive skips from."""

SURROGATE_N_TREES: int = 25

ACQUISITION_CANDIDATES: int = 512
"""Number of random hyperparameter configurations ranked per acquisition pick."""

DEFAULT_KAPPA: float = 1.96

FAILED_SCORE_MARGIN: float = 1.0
"""Failed trainings are told to the surrogate as the worst observed score plus this margin."""

CURVE_POINTS: int = 400

CURVE_EXTENSION: float = 0.25
"""Fraction of the data x-range added on each side of exported curves."""

CATALOG_FILENAME: str = "catalog.jsonl"
SEARCH_META_FILENAME: str = "search_meta.json"
ENSEMBLE_FILENAME: str = "ensemble.json"
REPORT_JSONL_FILENAME: str = "report.jsonl"
REPORT_TXT_FILENAME: str = "report.txt"
CURVES_FILENAME: str = "curves.csv"
SWEEP_JSONL_FILENAME: str = "sweep.jsonl"
SWEEP_TXT_FILENAME: str = "sweep.txt"

THREADS_ENV_VAR: str = "DEUQ_THREADS"
