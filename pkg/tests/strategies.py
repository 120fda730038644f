"""Hypothesis strategies for random problem instances.

Two sources of randomness are used across the suite: the package's own seeded
generator (spec-shaped validity noise) and a free-form strategy that draws the
whole cross-validity matrix, so attack patterns the generator is unlikely to
produce (e.g. invalidity across disagreeing models) get covered too.
"""

from __future__ import annotations

import hypothesis.strategies as st

from rae.scenario import (
    CounterfactualRecord,
    GeneratorConfig,
    ModelRecord,
    PreferenceSpec,
    Scenario,
    generate_random_scenario,
)


@st.composite
def generated_scenarios(draw, max_models: int = 6) -> Scenario:
    cfg = GeneratorConfig(
        n_models=draw(st.integers(1, max_models)),
        label_count=draw(st.sampled_from([2, 2, 2, 3])),
        invalidity_rate=draw(st.sampled_from([0.0, 0.2, 0.5])),
        tie_rate=draw(st.sampled_from([0.0, 0.5, 1.0])),
    )
    seed = draw(st.integers(0, 2**32 - 1))
    return generate_random_scenario(cfg, seed)


@st.composite
def free_scenarios(draw, max_models: int = 5) -> Scenario:
    """Fully random cross-validity matrix; only own-validity is forced."""
    n = draw(st.integers(1, max_models))
    label_count = draw(st.sampled_from([2, 2, 3]))
    labels = tuple(range(label_count))
    preds = [draw(st.sampled_from(labels)) for _ in range(n)]
    model_ids = [f"M{i + 1}" for i in range(n)]

    counterfactuals = []
    for i in range(n):
        row = {}
        for j in range(n):
            if j == i:
                row[model_ids[j]] = draw(
                    st.sampled_from([l for l in labels if l != preds[j]])
                )
            else:
                row[model_ids[j]] = draw(st.sampled_from(labels))
        counterfactuals.append(
            CounterfactualRecord(id=f"c{i + 1}", owner=model_ids[i], predictions=row)
        )

    ranks = {mid: float(draw(st.integers(0, max(1, n - 1)))) for mid in model_ids}
    return Scenario(
        label_set=labels,
        input_id="free",
        models=tuple(ModelRecord(id=model_ids[i], prediction=preds[i]) for i in range(n)),
        counterfactuals=tuple(counterfactuals),
        preference=PreferenceSpec(mode="ranks", ranks=ranks),
    )
