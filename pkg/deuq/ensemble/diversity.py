"""Architecture diversity of an ensemble from pairwise distances of genome embeddings."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.spatial.distance import pdist

from ..errors import DiversityError
from ..logger import DeuqLogger
from ..space.arch import embed


def diversity_score(genomes: Sequence[Sequence[int]]) -> float:
    """Sum of the pairwise Euclidean distances between embeddings after scaling them to unit norm.

    Every unordered pair counts once. Returns 0 when all genomes are identical.

    Example:
        >>> diversity_score([(0, 0), (3, 4)])
        1.0

    Raises:
        DiversityError: with fewer than two genomes or genomes of different lengths.
    """
    if len(genomes) < 2:  # noqa: PLR2004
        msg = f"Diversity needs at least two genomes, got {len(genomes)}."
        DeuqLogger.error(msg)
        raise DiversityError(msg)
    if len({len(g) for g in genomes}) != 1:
        msg = "Diversity needs genomes of equal length."
        DeuqLogger.error(msg)
        raise DiversityError(msg)
    distances = pdist(np.stack([embed(g) for g in genomes]).astype(np.float64))
    norm = np.linalg.norm(distances)
    if norm == 0:
        return 0.0
    return float(np.sum(distances / norm))
