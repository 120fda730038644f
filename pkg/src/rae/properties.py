"""Desirable-property checks and the batch evaluation harness."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from enum import Enum

from .ensembling import (
    Solution,
    argumentative_ensemble,
    augmented_ensemble,
    naive_ensemble,
    robust_ensemble,
)
from .errors import ConfigError
from .scenario import Scenario, derive_seed, resolve_preference
from .semantics import Semantics


class PropertyId(Enum):
    NON_EMPTINESS = "non_emptiness"
    NON_TRIVIALITY = "non_triviality"
    MODEL_AGREEMENT = "model_agreement"
    MAJORITY_VOTE = "majority_vote"
    COUNTERFACTUAL_VALIDITY = "counterfactual_validity"
    COUNTERFACTUAL_COHERENCE = "counterfactual_coherence"


PROPERTY_ORDER = tuple(PropertyId)


def check_property(s: Scenario, sol: Solution, prop: PropertyId) -> bool:
    """Per-instance truth of one desirable property for (scenario, solution)."""
    models = sol.selected_models
    ces = sol.selected_counterfactuals
    pred = {m.id: m.prediction for m in s.models}

    if prop is PropertyId.NON_EMPTINESS:
        return bool(models) and bool(ces)
    if prop is PropertyId.NON_TRIVIALITY:
        return len(models) > 1
    if prop is PropertyId.MODEL_AGREEMENT:
        return len({pred[m] for m in models}) <= 1
    if prop is PropertyId.MAJORITY_VOTE:
        if len({pred[m] for m in models}) > 1:
            return False
        if not models:
            return True  # vacuous: no selected label to outnumber
        label = pred[next(iter(models))]
        counts: dict[int, int] = {}
        for m in s.models:
            counts[m.prediction] = counts.get(m.prediction, 0) + 1
        return all(c <= counts.get(label, 0) for l, c in counts.items() if l != label)
    if prop is PropertyId.COUNTERFACTUAL_VALIDITY:
        by_id = {c.id: c for c in s.counterfactuals}
        return all(
            by_id[cid].predictions[mid] != pred[mid] for mid in models for cid in ces
        )
    if prop is PropertyId.COUNTERFACTUAL_COHERENCE:
        return all(
            (m.id in models) == (c.id in ces)
            for m, c in zip(s.models, s.counterfactuals)
        )
    raise ValueError(prop)


def check_all_properties(s: Scenario, sol: Solution) -> dict[PropertyId, bool]:
    return {p: check_property(s, sol, p) for p in PROPERTY_ORDER}


# ---------------------------------------------------------------------------
# batch evaluation


@dataclass(frozen=True)
class MethodSpec:
    """One method configuration: naive | augmented | robust | argumentative."""

    kind: str
    semantics: Semantics | None = None
    priority: tuple[tuple[str, ...], ...] | None = None

    @property
    def label(self) -> str:
        if self.kind != "argumentative":
            return self.kind
        name = f"arg:{self.semantics.value}"
        if self.priority is not None:
            name += ":" + ",".join("+".join(g) for g in self.priority)
        return name


def run_method(s: Scenario, spec: MethodSpec, seed: int) -> Solution:
    if spec.kind == "naive":
        return naive_ensemble(s, seed)
    if spec.kind == "augmented":
        return augmented_ensemble(s, seed)
    if spec.kind == "robust":
        return robust_ensemble(s, seed)
    if spec.kind == "argumentative":
        if spec.semantics is None:
            raise ConfigError("argumentative method needs a semantics")
        pref = resolve_preference(s, list(spec.priority) if spec.priority is not None else None)
        return argumentative_ensemble(s, spec.semantics, pref=pref, seed=seed)
    raise ConfigError(f"unknown method kind {spec.kind!r}")


@dataclass(frozen=True)
class MethodReport:
    method: str
    n_scenarios: int
    accuracy: float | None
    mean_simplicity: float | None
    rates: dict[PropertyId, float]
    mean_solve_time_s: float


@dataclass(frozen=True)
class BatchReport:
    rows: tuple[MethodReport, ...]

    def row(self, method_label: str) -> MethodReport:
        for r in self.rows:
            if r.method == method_label:
                return r
        raise KeyError(method_label)

    def to_json_obj(self) -> dict:
        return {
            "methods": [
                {
                    "method": r.method,
                    "n_scenarios": r.n_scenarios,
                    "accuracy": r.accuracy,
                    "mean_simplicity": r.mean_simplicity,
                    "rates": {p.value: rate for p, rate in r.rates.items()},
                    "mean_solve_time_s": r.mean_solve_time_s,
                }
                for r in self.rows
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def to_csv(self, with_timing: bool = False) -> str:
        """One row per method; timing is opt-in so default output is
        byte-deterministic for a fixed seed."""
        header = ["method", "acc", "simp"] + [p.value for p in PROPERTY_ORDER] + ["mean_time_ms"]
        lines = [",".join(header)]
        for r in self.rows:
            cells = [
                r.method,
                "" if r.accuracy is None else f"{r.accuracy:.6f}",
                "" if r.mean_simplicity is None else f"{r.mean_simplicity:.6f}",
            ]
            cells += [f"{r.rates[p]:.6f}" for p in PROPERTY_ORDER]
            cells.append(f"{r.mean_solve_time_s * 1000.0:.3f}" if with_timing else "")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def evaluate_batch(batch: list[Scenario], methods: list[MethodSpec], seed: int = 0) -> BatchReport:
    """Run every method on every scenario and aggregate.

    Per-scenario seeds are derived from (seed, input_id), so results do not
    depend on batch order; aggregation sums in input_id order for full
    reproducibility.
    """
    if not batch:
        raise ConfigError("batch is empty")
    if not methods:
        raise ConfigError("no methods configured")
    seen = set()
    for spec in methods:
        if spec.label in seen:
            raise ConfigError(f"duplicate method {spec.label!r}")
        seen.add(spec.label)

    rows = []
    for spec in methods:
        per_scenario: list[tuple[str, Solution, float]] = []
        for s in batch:
            sub_seed = derive_seed(seed, s.input_id)
            start = time.perf_counter()
            sol = run_method(s, spec, sub_seed)
            elapsed = time.perf_counter() - start
            per_scenario.append((s.input_id, sol, elapsed))
        per_scenario.sort(key=lambda item: item[0])

        by_id = {s.input_id: s for s in batch}
        hits = 0
        with_truth = 0
        simp_values: list[float] = []
        simp_absent = False
        sat = {p: 0 for p in PROPERTY_ORDER}
        total_time = 0.0
        for input_id, sol, elapsed in per_scenario:
            s = by_id[input_id]
            total_time += elapsed
            if s.truth_label is not None:
                with_truth += 1
                if sol.aggregated_label == s.truth_label:
                    hits += 1
            if sol.selected_models:
                values = []
                for m in s.models:
                    if m.id in sol.selected_models:
                        if "simplicity" not in m.properties:
                            simp_absent = True
                            break
                        values.append(m.properties["simplicity"])
                else:
                    simp_values.append(sum(values) / len(values))
            for p in PROPERTY_ORDER:
                if check_property(s, sol, p):
                    sat[p] += 1

        n = len(batch)
        rows.append(
            MethodReport(
                method=spec.label,
                n_scenarios=n,
                accuracy=(hits / with_truth) if with_truth else None,
                mean_simplicity=(
                    None if simp_absent or not simp_values else sum(simp_values) / len(simp_values)
                ),
                rates={p: sat[p] / n for p in PROPERTY_ORDER},
                mean_solve_time_s=total_time / n,
            )
        )
    return BatchReport(rows=tuple(rows))
