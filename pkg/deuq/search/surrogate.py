"""Bayesian optimization over training hyperparameters with a bagged-tree surrogate.

The surrogate predicts the validation NLL of an encoded configuration; its uncertainty is the
spread of the individual tree predictions. Batches are proposed with the upper confidence bound
and a constant liar: after each pick a fake observation with the worst score seen so far is
added so the next pick moves elsewhere.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.ensemble import BaggingRegressor
from sklearn.tree import DecisionTreeRegressor

from ..configs import HpSpace
from ..errors import SurrogateError
from ..logger import DeuqLogger
from ..models.records import HpConfig
from ..params import (
    ACQUISITION_CANDIDATES,
    DEFAULT_KAPPA,
    FAILED_SCORE_MARGIN,
    SURROGATE_N_TREES,
)
from ..space.hp import encode_hp, sample_hp_batch
from ..utils.utils import derive_seed


class Surrogate:
    """Regression-tree bagging model of validation NLL over encoded hyperparameters.

    Attributes:
        space: the hyperparameter space observations are encoded in.
        n_trees: number of bagged trees.
        rng_seed: seed of the bootstrap resampling; each refit derives its own from it.
        observations: (configuration, score) pairs in the order they were told. Failed
            trainings are stored with score +inf.
    """

    def __init__(self, space: HpSpace, n_trees: int = SURROGATE_N_TREES, rng_seed: int = 0):
        """Unfitted surrogate."""
        self.space = space
        self.n_trees = n_trees
        self.rng_seed = rng_seed
        self.observations: list[tuple[HpConfig, float]] = []
        self._model: BaggingRegressor | None = None

    @property
    def fitted(self) -> bool:
        """True once the model has been fit on at least one observation."""
        return self._model is not None

    @property
    def n_observations(self) -> int:
        """Size of the training set."""
        return len(self.observations)

    def targets(self) -> np.ndarray:
        """Observed scores with failures replaced by the worst finite score plus a margin."""
        scores = np.array([s for _, s in self.observations], dtype=np.float64)
        finite = scores[np.isfinite(scores)]
        fallback = (finite.max() if finite.size else 0.0) + FAILED_SCORE_MARGIN
        return np.where(np.isfinite(scores), scores, fallback)

    def worst(self) -> float:
        """Largest observed target."""
        return float(self.targets().max())

    def fit(self) -> Surrogate:
        """Refit on all observations."""
        if not self.observations:
            self._model = None
            return self
        x = np.stack([encode_hp(hp, self.space) for hp, _ in self.observations])
        seed = derive_seed(self.rng_seed, len(self.observations)) % 2**32
        self._model = BaggingRegressor(
            estimator=DecisionTreeRegressor(),
            n_estimators=self.n_trees,
            random_state=seed,
        ).fit(x, self.targets())
        DeuqLogger.debug(f"Surrogate refit on {len(self.observations)} observations.")
        return self

    def tell(self, hp: HpConfig, score: float) -> Surrogate:
        """Add one observation and refit."""
        self.observations.append((hp, float(score)))
        return self.fit()

    def retract(self, n: int) -> Surrogate:
        """Remove the last `n` observations and refit."""
        if n > 0:
            del self.observations[-n:]
            self.fit()
        return self

    def predict(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Mean and standard deviation over trees at encoded points `x`.

        Raises:
            SurrogateError: if the surrogate is not fitted.
        """
        if self._model is None:
            msg = "Surrogate has no observations to predict from."
            DeuqLogger.error(msg)
            raise SurrogateError(msg)
        x = np.atleast_2d(x)
        per_tree = np.array(
            [
                tree.predict(x[:, features])
                for tree, features in zip(
                    self._model.estimators_, self._model.estimators_features_, strict=True
                )
            ]
        )
        return per_tree.mean(axis=0), per_tree.std(axis=0)


def bo_tell(surrogate: Surrogate, hp: HpConfig, score: float) -> Surrogate:
    """Record the validation score of a configuration; +inf marks a failed training."""
    if math.isnan(score):
        score = math.inf
    return surrogate.tell(hp, score)


def ucb(mu: np.ndarray, sigma: np.ndarray, kappa: float) -> np.ndarray:
    """Upper confidence bound of improvement for a minimized score: -mu + kappa * sigma."""
    return -mu + kappa * sigma


def bo_ask(
    surrogate: Surrogate,
    space: HpSpace,
    n: int,
    kappa: float = DEFAULT_KAPPA,
    rng: np.random.Generator | None = None,
    n_candidates: int = ACQUISITION_CANDIDATES,
) -> list[HpConfig]:
    """Propose `n` configurations.

    Each pick maximizes the UCB over fresh random candidates, skipping candidates already picked
    in this batch when others remain. Between picks a lie equal to the worst observed score is
    told at the picked point; the lies are retracted before returning, so the surrogate's
    observations are unchanged. An unfitted surrogate gives random samples.
    """
    rng = rng if rng is not None else np.random.default_rng()
    if not surrogate.fitted:
        DeuqLogger.debug(f"Surrogate unfitted; sampling {n} random configurations.")
        return sample_hp_batch(space, rng, n)
    picks: list[HpConfig] = []
    lies = 0
    try:
        for i in range(n):
            picked = {hp.key() for hp in picks}
            candidates = sample_hp_batch(space, rng, n_candidates)
            candidates = [c for c in candidates if c.key() not in picked] or candidates
            mu, sigma = surrogate.predict(np.stack([encode_hp(c, space) for c in candidates]))
            best = int(np.argmax(ucb(mu, sigma, kappa)))
            picks.append(candidates[best])
            DeuqLogger.debug(
                f"Acquired {candidates[best].asdict} (mu {mu[best]:.4f}, sigma {sigma[best]:.4f})."
            )
            if i < n - 1:
                surrogate.tell(candidates[best], surrogate.worst())
                lies += 1
    finally:
        surrogate.retract(lies)
    return picks
