"""Classifier pools + nearest-neighbour counterfactuals -> scenario batches."""

from .ces import CETable, generate_ces
from .data import load_csv_dataset, make_synthetic_dataset
from .export import export_batch
from .pool import PoolSpec, TrainedPool, train_pool

__all__ = [
    "CETable",
    "PoolSpec",
    "TrainedPool",
    "export_batch",
    "generate_ces",
    "load_csv_dataset",
    "make_synthetic_dataset",
    "train_pool",
]
