"""The four ensembling methods: naive, augmented, robust, argumentative.

All methods are pure given (scenario, preference, seed). Random choices
(plurality ties, extension ties) come from seeds derived per scenario so that
batch evaluation stays order-independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .framework import build_baf
from .scenario import Label, PreferenceRanking, Scenario, derive_seed, resolve_preference
from .semantics import ExtensionSet, Semantics, enumerate_extensions

ABSENT = None


@dataclass(frozen=True)
class Solution:
    """Selected models and counterfactuals plus the aggregated label.

    aggregated_label is ABSENT (None) exactly when no model is selected,
    which can happen for d-preferred/stable solutions made only of
    counterfactuals.
    """

    method: str
    selected_models: frozenset[str]
    selected_counterfactuals: frozenset[str]
    aggregated_label: Label | None
    diagnostics: dict = field(default_factory=dict)

    def members(self) -> frozenset[str]:
        return self.selected_models | self.selected_counterfactuals

    def to_json_obj(self) -> dict:
        return {
            "method": self.method,
            "models": sorted(self.selected_models),
            "counterfactuals": sorted(self.selected_counterfactuals),
            "label": self.aggregated_label,
            "diagnostics": self.diagnostics,
        }


def _top_labels(s: Scenario) -> tuple[list[Label], dict[Label, int]]:
    counts = {label: 0 for label in s.label_set}
    for m in s.models:
        counts[m.prediction] += 1
    best = max(counts.values())
    return sorted(l for l, c in counts.items() if c == best), counts


def naive_ensemble(s: Scenario, seed: int = 0) -> Solution:
    """Plurality vote; ties are resolved by a seeded uniform draw."""
    top, _ = _top_labels(s)
    tie = len(top) > 1
    if tie:
        rng = random.Random(derive_seed(seed, f"naive:{s.input_id}"))
        label = rng.choice(top)
    else:
        label = top[0]
    models = frozenset(m.id for m in s.models if m.prediction == label)
    return Solution(
        method="naive",
        selected_models=models,
        selected_counterfactuals=frozenset(),
        aggregated_label=label,
        diagnostics={"tie_broken": tie, "seed_used": seed},
    )


def augmented_ensemble(s: Scenario, seed: int = 0) -> Solution:
    """Naive models plus the counterfactual of every selected model."""
    base = naive_ensemble(s, seed)
    ces = frozenset(
        c.id for c in s.counterfactuals if c.owner in base.selected_models
    )
    return Solution(
        method="augmented",
        selected_models=base.selected_models,
        selected_counterfactuals=ces,
        aggregated_label=base.aggregated_label,
        diagnostics=dict(base.diagnostics),
    )


def robust_ensemble(s: Scenario, seed: int = 0) -> Solution:
    """Naive models plus only counterfactuals valid on every selected model."""
    base = naive_ensemble(s, seed)
    pred = {m.id: m.prediction for m in s.models}
    ces = frozenset(
        c.id
        for c in s.counterfactuals
        if c.owner in base.selected_models
        and all(c.predictions[mid] != pred[mid] for mid in base.selected_models)
    )
    return Solution(
        method="robust",
        selected_models=base.selected_models,
        selected_counterfactuals=ces,
        aggregated_label=base.aggregated_label,
        diagnostics=dict(base.diagnostics),
    )


def _extension_label(s: Scenario, models: frozenset[str]) -> Label | None:
    labels = {m.prediction for m in s.models if m.id in models}
    if not labels:
        return ABSENT
    if len(labels) > 1:
        raise RuntimeError(f"extension mixes predictions {sorted(labels)}; enumerator bug")
    return labels.pop()


def argumentative_ensemble(
    s: Scenario,
    sem: Semantics,
    pref: PreferenceRanking | None = None,
    seed: int = 0,
    max_arguments: int | None = None,
    keep_extensions: bool = False,
) -> Solution:
    """Cardinality-maximal extension of the scenario's bipolar framework.

    Tie-breaking among cardinality-maximal extensions:
      1. prefer extensions whose models share the naive-ensembling label
         computed with the same seed;
      2. for d-preferred/stable, prefer extensions containing at least one
         model and one counterfactual;
      3. any remaining tie is a seeded uniform draw over the canonical order.
    """
    ranking = pref if pref is not None else resolve_preference(s)
    baf = build_baf(s, ranking)
    family: ExtensionSet = enumerate_extensions(baf, sem, max_arguments)

    model_ids = set(s.model_ids())
    as_ids = [baf.names(ext) for ext in family.extensions]  # canonical order
    top_size = max((len(e) for e in as_ids), default=0)
    candidates = [e for e in as_ids if len(e) == top_size]
    tie = len(candidates) > 1

    if tie:
        naive_label = naive_ensemble(s, seed).aggregated_label
        matching = [
            e for e in candidates if _extension_label(s, frozenset(e & model_ids)) == naive_label
        ]
        if matching:
            candidates = matching
        if sem in (Semantics.D_PREFERRED, Semantics.STABLE):
            mixed = [e for e in candidates if e & model_ids and e - model_ids]
            if mixed:
                candidates = mixed
        if len(candidates) > 1:
            rng = random.Random(derive_seed(seed, f"argtie:{s.input_id}"))
            candidates = [candidates[rng.randrange(len(candidates))]]

    chosen = candidates[0] if candidates else frozenset()
    models = frozenset(chosen & model_ids)
    ces = frozenset(chosen - model_ids)
    diagnostics: dict = {
        "extension_count": len(family),
        "tie_broken": tie,
        "seed_used": seed,
    }
    if keep_extensions:
        diagnostics["extensions"] = [sorted(e) for e in as_ids]
    return Solution(
        method=f"arg:{sem.value}",
        selected_models=models,
        selected_counterfactuals=ces,
        aggregated_label=_extension_label(s, models),
        diagnostics=diagnostics,
    )
