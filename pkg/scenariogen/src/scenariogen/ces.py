"""Nearest-neighbour counterfactuals and their cross-model validity."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .pool import TrainedPool


@dataclass
class CETable:
    """Per kept test input: one counterfactual per model plus the full
    cross-prediction matrix (rows: owning model's CE, cols: judging model)."""

    input_indices: list[int]  # indices into pool.x_test that got a full CE row
    ce_points: list[np.ndarray]  # (n_models, n_features) per kept input
    cross_predictions: list[np.ndarray]  # (n_models, n_models) per kept input
    input_predictions: list[np.ndarray]  # (n_models,) model labels on the input


def generate_ces(pool: TrainedPool, input_indices: list[int] | None = None) -> CETable:
    """For each (model, input): the nearest training point, in standardized
    Euclidean distance, that the model classifies opposite to its prediction
    on the input. Own-validity holds by construction; inputs for which some
    model has no opposite-class training point are skipped with a warning.
    """
    if input_indices is None:
        input_indices = list(range(len(pool.x_test)))

    train_std = pool.standardize(pool.x_train)
    # model -> predicted labels over the training pool (CE candidates)
    train_pred = pool.predict_all(pool.x_train)

    kept: list[int] = []
    ce_points: list[np.ndarray] = []
    cross: list[np.ndarray] = []
    input_preds: list[np.ndarray] = []
    for idx in input_indices:
        x = pool.x_test[idx]
        x_std = pool.standardize(x)
        dists = np.linalg.norm(train_std - x_std, axis=1)
        row_points = np.empty((len(pool.models), pool.x_train.shape[1]))
        preds_on_x = np.array([int(m.predict(x[None, :])[0]) for m in pool.models])
        ok = True
        for mi in range(len(pool.models)):
            opposite = train_pred[mi] != preds_on_x[mi]
            if not opposite.any():
                warnings.warn(
                    f"input {idx}: model {mi} classifies no training point opposite "
                    "to its prediction; scenario skipped",
                    stacklevel=2,
                )
                ok = False
                break
            candidates = np.where(opposite)[0]
            row_points[mi] = pool.x_train[candidates[np.argmin(dists[candidates])]]
        if not ok:
            continue
        kept.append(idx)
        ce_points.append(row_points)
        cross.append(pool.predict_all(row_points).T.copy())  # rows: CE owner, cols: judge
        input_preds.append(preds_on_x)
    return CETable(
        input_indices=kept,
        ce_points=ce_points,
        cross_predictions=cross,
        input_predictions=input_preds,
    )
