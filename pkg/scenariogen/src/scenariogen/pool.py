"""Training pools of small neural classifiers with accuracy/simplicity scores."""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.exceptions import ConvergenceWarning
from sklearn.neural_network import MLPClassifier

from .data import DataError, load_csv_dataset, make_synthetic_dataset

SIMPLICITY_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)

# hidden-layer tiers ordered most complex first; desk-scale default is two
DEFAULT_TIERS: tuple[tuple[int, ...], ...] = ((20, 15), (8, 6))

MAX_DISTINCTNESS_RETRIES = 50


def _sub_seed(master: int, key: str) -> int:
    digest = hashlib.sha256(f"{master}:{key}".encode()).digest()
    return int.from_bytes(digest[:4], "big")


@dataclass(frozen=True)
class PoolSpec:
    """What to train: data source, pool size, architecture tiers, splits."""

    n_models: int = 30
    data_path: str | None = None  # None -> synthetic two-Gaussian data
    synthetic_samples: int = 2400  # test split must be fine-grained enough for distinct accuracies
    synthetic_features: int = 2
    synthetic_separation: float = 2.0
    tiers: tuple[tuple[int, ...], ...] = DEFAULT_TIERS
    train_fraction: float = 0.8
    seed: int = 0

    def simplicity_scores(self) -> tuple[float, ...]:
        """Evenly spaced picks from the fixed grid, most complex tier -> 0."""
        k = len(self.tiers)
        if not 1 <= k <= 5:
            raise DataError("between 1 and 5 architecture tiers are supported")
        if k == 1:
            return (SIMPLICITY_GRID[-1],)
        picks = [round(i * (len(SIMPLICITY_GRID) - 1) / (k - 1)) for i in range(k)]
        return tuple(SIMPLICITY_GRID[p] for p in picks)


@dataclass
class TrainedPool:
    spec: PoolSpec
    models: list[MLPClassifier]
    accuracies: list[float]
    simplicities: list[float]
    x_train: np.ndarray
    y_train: np.ndarray
    x_test: np.ndarray
    y_test: np.ndarray
    feature_mean: np.ndarray = field(init=False)
    feature_scale: np.ndarray = field(init=False)

    def __post_init__(self):
        self.feature_mean = self.x_train.mean(axis=0)
        scale = self.x_train.std(axis=0)
        scale[scale == 0.0] = 1.0
        self.feature_scale = scale

    def standardize(self, x: np.ndarray) -> np.ndarray:
        return (x - self.feature_mean) / self.feature_scale

    def predict_all(self, x: np.ndarray) -> np.ndarray:
        """(n_models, n_points) label matrix."""
        return np.stack([m.predict(x) for m in self.models])


def _fit_one(spec: PoolSpec, hidden: tuple[int, ...], x, y, seed: int) -> MLPClassifier:
    rng = np.random.default_rng(seed)
    subset = rng.random(len(x)) < 0.75  # per-model train split within the pool data
    if subset.sum() < 10 or len(set(y[subset])) < 2:
        subset = np.ones(len(x), dtype=bool)
    clf = MLPClassifier(
        hidden_layer_sizes=hidden,
        solver="lbfgs",
        max_iter=150,
        random_state=seed,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        clf.fit(x[subset], y[subset])
    return clf


def train_pool(spec: PoolSpec) -> TrainedPool:
    """Train spec.n_models classifiers with distinct seeds and splits.

    Accuracy is measured on the held-out test split. Models that tie on test
    accuracy are retrained with fresh seeds (bounded retries) so the
    accuracy-based preference usually has a unique optimum; remaining ties
    after the retry budget are kept with a warning.
    """
    if spec.n_models < 1:
        raise DataError("n_models must be >= 1")
    if spec.data_path is not None:
        x, y = load_csv_dataset(spec.data_path)
    else:
        x, y = make_synthetic_dataset(
            n_samples=spec.synthetic_samples,
            n_features=spec.synthetic_features,
            separation=spec.synthetic_separation,
            seed=_sub_seed(spec.seed, "data"),
        )
    if len(set(y.tolist())) != 2:
        raise DataError("target must be binary")

    rng = np.random.default_rng(_sub_seed(spec.seed, "split"))
    order = rng.permutation(len(x))
    cut = int(round(spec.train_fraction * len(x)))
    train_idx, test_idx = order[:cut], order[cut:]
    if len(test_idx) == 0 or len(train_idx) == 0:
        raise DataError("train fraction leaves an empty split")
    x_train, y_train = x[train_idx], y[train_idx]
    x_test, y_test = x[test_idx], y[test_idx]

    tiers = spec.tiers
    scores = spec.simplicity_scores()
    models: list[MLPClassifier] = []
    simplicities: list[float] = []
    for i in range(spec.n_models):
        tier = i % len(tiers)
        models.append(_fit_one(spec, tiers[tier], x_train, y_train, _sub_seed(spec.seed, f"model:{i}")))
        simplicities.append(scores[tier])

    def accuracy(clf) -> float:
        return float((clf.predict(x_test) == y_test).mean())

    accuracies = [accuracy(m) for m in models]
    budget = MAX_DISTINCTNESS_RETRIES  # total retrains, not rounds
    attempt = 0
    while budget > 0:
        groups: dict[float, list[int]] = {}
        for i, a in enumerate(accuracies):
            groups.setdefault(a, []).append(i)
        dupes = [i for members in groups.values() for i in members[1:]]
        if not dupes:
            break
        for i in dupes:
            if budget == 0:
                break
            tier = i % len(tiers)
            models[i] = _fit_one(
                spec, tiers[tier], x_train, y_train, _sub_seed(spec.seed, f"retry:{attempt}:{i}")
            )
            accuracies[i] = accuracy(models[i])
            budget -= 1
        attempt += 1
    if len(set(accuracies)) != len(accuracies):
        warnings.warn("test accuracies still tied after retry budget", stacklevel=2)

    return TrainedPool(
        spec=spec,
        models=models,
        accuracies=accuracies,
        simplicities=simplicities,
        x_train=x_train,
        y_train=y_train,
        x_test=x_test,
        y_test=y_test,
    )
