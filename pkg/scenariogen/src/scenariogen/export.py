"""Export scenario batches in the engine's JSON-lines format.

The document schema is owned by the consuming engine; this module writes it
and re-checks the invariants it is responsible for (complete cross matrices,
own-validity, binary labels) before anything reaches disk.
"""

from __future__ import annotations

import json

from .ces import CETable
from .pool import TrainedPool


class ExportError(ValueError):
    pass


def _preference_obj(priority: list[list[str]] | None) -> dict:
    if not priority:
        return {"mode": "uniform"}
    return {"mode": "priority", "priority": [list(g) for g in priority]}


def scenario_documents(
    pool: TrainedPool,
    ces: CETable,
    priority: list[list[str]] | None = None,
) -> list[dict]:
    n_models = len(pool.models)
    model_ids = [f"M{i + 1}" for i in range(n_models)]
    ce_ids = [f"c{i + 1}" for i in range(n_models)]
    docs = []
    for row, idx in enumerate(ces.input_indices):
        input_id = f"t{idx:05d}"
        preds_on_x = ces.input_predictions[row]
        cross = ces.cross_predictions[row]
        models = [
            {
                "id": model_ids[i],
                "prediction": int(preds_on_x[i]),
                "properties": {
                    "accuracy": round(pool.accuracies[i], 6),
                    "simplicity": pool.simplicities[i],
                },
            }
            for i in range(n_models)
        ]
        counterfactuals = []
        for i in range(n_models):
            predictions = {model_ids[j]: int(cross[i][j]) for j in range(n_models)}
            if predictions[model_ids[i]] == int(preds_on_x[i]):
                raise ExportError(f"{input_id}: counterfactual {ce_ids[i]} does not flip {model_ids[i]}")
            counterfactuals.append(
                {"id": ce_ids[i], "owner": model_ids[i], "predictions": predictions}
            )
        doc = {
            "label_set": [0, 1],
            "input_id": input_id,
            "truth_label": int(pool.y_test[idx]),
            "models": models,
            "counterfactuals": counterfactuals,
            "preference": _preference_obj(priority),
        }
        _check_document(doc)
        docs.append(doc)
    return docs


def _check_document(doc: dict) -> None:
    input_id = doc["input_id"]
    labels = set(doc["label_set"])
    model_ids = [m["id"] for m in doc["models"]]
    if len(set(model_ids)) != len(model_ids):
        raise ExportError(f"{input_id}: duplicate model ids")
    for m in doc["models"]:
        if m["prediction"] not in labels:
            raise ExportError(f"{input_id}: prediction outside label set")
    for c in doc["counterfactuals"]:
        missing = set(model_ids) - set(c["predictions"])
        if missing:
            raise ExportError(f"{input_id}: counterfactual {c['id']} missing entries {sorted(missing)}")
        if any(v not in labels for v in c["predictions"].values()):
            raise ExportError(f"{input_id}: counterfactual {c['id']} has out-of-set label")


def export_batch(
    pool: TrainedPool,
    ces: CETable,
    out_path: str,
    priority: list[list[str]] | None = None,
) -> int:
    """Write one scenario per line; returns the number of lines written."""
    docs = scenario_documents(pool, ces, priority)
    with open(out_path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    return len(docs)
