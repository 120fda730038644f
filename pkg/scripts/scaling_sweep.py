#!/usr/bin/env python3
"""Timing sweep of argumentative ensembling over growing model pools.

    python scripts/scaling_sweep.py --sizes 10,20,30 --repeats 5 -o sweep.csv

Thin wrapper around the library so the sweep can be tweaked without going
through the CLI; writes the same CSV shape as `rae bench`.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from rae.ensembling import argumentative_ensemble
from rae.scenario import GeneratorConfig, derive_seed, generate_random_scenario
from rae.semantics import Semantics


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10,20,30")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--invalidity", type=float, default=0.3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--out", default=None)
    args = parser.parse_args()

    sizes = [int(x) for x in args.sizes.split(",")]
    rows = ["n_models,semantics,mean_ms,p95_ms"]
    for size in sizes:
        scenarios = [
            generate_random_scenario(
                GeneratorConfig(n_models=size, invalidity_rate=args.invalidity),
                seed=derive_seed(args.seed, f"sweep:{size}:{i}"),
            )
            for i in range(args.repeats)
        ]
        for sem in (Semantics.S_PREFERRED, Semantics.D_PREFERRED):
            samples = []
            for s in scenarios:
                start = time.perf_counter()
                argumentative_ensemble(s, sem, seed=args.seed)
                samples.append((time.perf_counter() - start) * 1000.0)
            p95 = sorted(samples)[max(0, int(round(0.95 * len(samples))) - 1)]
            rows.append(f"{size},{sem.value},{statistics.fmean(samples):.3f},{p95:.3f}")

    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
