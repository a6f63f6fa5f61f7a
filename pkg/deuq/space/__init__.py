"""Architecture and hyperparameter search spaces."""

from .arch import (
    ArchGenome,
    cardinalities,
    decode,
    embed,
    genome_length,
    mutate,
    random_genome,
)
from .hp import encode_hp, sample_hp

__all__ = [
    "ArchGenome",
    "cardinalities",
    "decode",
    "embed",
    "encode_hp",
    "genome_length",
    "mutate",
    "random_genome",
    "sample_hp",
]
