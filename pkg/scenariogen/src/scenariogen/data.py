"""Dataset loading: synthetic two-Gaussian blobs or a CSV with a binary target."""

from __future__ import annotations

import csv

import numpy as np


class DataError(ValueError):
    pass


def make_synthetic_dataset(
    n_samples: int = 600,
    n_features: int = 2,
    separation: float = 2.0,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Two Gaussian clusters centred at +-separation/2 along every axis.

    The default separation leaves the classes overlapping so trained models
    disagree on some inputs and accuracies spread out; large separations give
    an (almost) perfectly separable toy set.
    """
    rng = np.random.default_rng(seed)
    half = n_samples // 2
    shift = np.full(n_features, separation / 2.0)
    x0 = rng.normal(size=(half, n_features)) - shift
    x1 = rng.normal(size=(n_samples - half, n_features)) + shift
    x = np.vstack([x0, x1])
    y = np.concatenate([np.zeros(half, dtype=int), np.ones(n_samples - half, dtype=int)])
    order = rng.permutation(n_samples)
    return x[order], y[order]


def load_csv_dataset(path: str) -> tuple[np.ndarray, np.ndarray]:
    """CSV with a header row; the final column is the binary target."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise DataError(f"{path}: need a header row and at least one data row")
    body = rows[1:]
    width = len(rows[0])
    if width < 2:
        raise DataError(f"{path}: need at least one feature column and a target column")
    try:
        matrix = np.array([[float(v) for v in row] for row in body], dtype=float)
    except ValueError as exc:
        raise DataError(f"{path}: non-numeric cell ({exc})") from exc
    x = matrix[:, :-1]
    raw_y = matrix[:, -1]
    values = sorted(set(raw_y.tolist()))
    if len(values) != 2:
        raise DataError(f"{path}: target column must be binary, found {len(values)} distinct values")
    y = (raw_y == values[1]).astype(int)
    return x, y
