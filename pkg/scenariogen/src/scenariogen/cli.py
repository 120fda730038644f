"""raegen: train a pool, build counterfactuals, export a scenario batch.

    raegen --synthetic --models 30 --out batch.jsonl --seed 7 --pref accuracy,simplicity
    raegen --data table.csv --models 10 --inputs 50 --out batch.jsonl

The batch feeds the engine directly:  rae evaluate --batch batch.jsonl ...
"""

from __future__ import annotations

import argparse
import sys

from .ces import generate_ces
from .data import DataError
from .export import ExportError, export_batch
from .pool import DEFAULT_TIERS, PoolSpec, train_pool


def _parse_priority(text: str | None) -> list[list[str]] | None:
    if not text:
        return None
    groups = []
    for chunk in text.split(","):
        names = [n.strip() for n in chunk.split("+") if n.strip()]
        if not names:
            raise DataError(f"empty priority group in {text!r}")
        groups.append(names)
    return groups


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="raegen", description=__doc__)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", default=None, help="CSV with header row, final column = binary target")
    source.add_argument("--synthetic", action="store_true", help="two-Gaussian synthetic data")
    parser.add_argument("--models", type=int, default=30)
    parser.add_argument("--inputs", type=int, default=50, help="max test inputs to export")
    parser.add_argument("--tiers", type=int, default=len(DEFAULT_TIERS), choices=range(1, 6),
                        help="number of architecture tiers (simplicity levels)")
    parser.add_argument("--separation", type=float, default=2.0,
                        help="synthetic cluster separation (bigger = easier data)")
    parser.add_argument("--samples", type=int, default=600)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--pref", default=None, help="priority list, e.g. accuracy,simplicity")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    base_tiers = ((30, 25), (20, 20), (20, 15), (15, 15), (8, 6))
    tiers = base_tiers[: args.tiers] if args.tiers != len(DEFAULT_TIERS) else DEFAULT_TIERS

    try:
        spec = PoolSpec(
            n_models=args.models,
            data_path=args.data,
            synthetic_samples=args.samples,
            synthetic_separation=args.separation,
            tiers=tiers,
            seed=args.seed,
        )
        pool = train_pool(spec)
        ces = generate_ces(pool, list(range(min(args.inputs, len(pool.x_test)))))
        count = export_batch(pool, ces, args.out, priority=_parse_priority(args.pref))
    except (DataError, ExportError, OSError) as exc:
        print(f"raegen: error: {exc}", file=sys.stderr)
        return 1
    print(f"raegen: wrote {count} scenarios to {args.out}", file=sys.stderr)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
