"""All deuq errors."""


class CatalogError(Exception):
    """Raised when a catalog file or record cannot be read or written."""


class CatalogReferenceError(Exception):
    """Raised when a model id referenced by an ensemble is not in the catalog."""


class ConfigError(Exception):
    """Raised when a run configuration is invalid."""


class DatasetReadError(Exception):
    """Raised when a dataset file cannot be read into a numeric table."""


class DatasetShapeError(Exception):
    """Raised when a dataset does not have the expected number of rows or features."""


class DiversityError(Exception):
    """Raised when a diversity score cannot be computed for a set of genomes."""


class EmptyCatalogError(Exception):
    """Raised when a catalog has no successfully trained models."""


class EnsembleError(Exception):
    """Raised when an ensemble cannot be formed or evaluated."""


class GenomeError(Exception):
    """Raised when an architecture genome does not fit its search space."""


class HpSpaceError(Exception):
    """Raised when a hyperparameter configuration is outside its search space."""


class MetricError(Exception):
    """Raised when a score cannot be computed from the given predictions."""


class NonFiniteValueError(Exception):
    """Raised when a computation receives or produces non-finite values."""


class PopulationError(Exception):
    """Raised when the aging population cannot serve a request."""


class ShapeMismatchError(Exception):
    """Raised when an array does not have the shape a network layer expects."""


class SplitError(Exception):
    """Raised when a dataset cannot be split as requested."""


class StandardizerError(Exception):
    """Raised when a standardizer cannot be fit or applied."""


class SurrogateError(Exception):
    """Raised when the hyperparameter surrogate cannot serve a request."""


class TrainingError(Exception):
    """Raised when a training run produces non-finite losses."""


class UnknownOptimizerError(Exception):
    """Raised when an optimizer name has no update rule."""


class UnsupportedOperationError(Exception):
    """Raised when an operation is not supported for the given data."""
