"""Problem-instance data model, file I/O, validation and generation.

A scenario bundles everything the ensembling engine needs to know about one
input: the class labels, each model's prediction on the input, the complete
cross-validity matrix of every counterfactual on every model, per-model
property scores, and a preference specification.

Scenario file format (UTF-8 JSON, one document)::

    {"label_set": [0, 1],
     "input_id": "x-001",
     "truth_label": 0,                      # optional
     "models": [{"id": "M1", "prediction": 0,
                 "properties": {"accuracy": 0.85, "simplicity": 0.0}}, ...],
     "counterfactuals": [{"id": "c1", "owner": "M1",
                          "predictions": {"M1": 1, "M2": 0, "M3": 1}}, ...],
     "preference": {"mode": "uniform"}
                   | {"mode": "ranks", "ranks": {"M1": 0.0, ...}}
                   | {"mode": "priority", "priority": [["accuracy"], ["simplicity"]]}}

Batches are JSON-lines files with one scenario per line.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field

from .errors import ConfigError, ParseError, SchemaError

Label = int


def derive_seed(master: int, key: str) -> int:
    """Stable 64-bit sub-seed for (master seed, string key)."""
    digest = hashlib.sha256(f"{master}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class ModelRecord:
    id: str
    prediction: Label
    properties: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class CounterfactualRecord:
    id: str
    owner: str
    predictions: dict[str, Label]


@dataclass(frozen=True)
class PreferenceSpec:
    mode: str  # "uniform" | "ranks" | "priority"
    ranks: dict[str, float] | None = None
    priority: tuple[tuple[str, ...], ...] | None = None


UNIFORM_PREFERENCE = PreferenceSpec(mode="uniform")


@dataclass(frozen=True)
class Scenario:
    label_set: tuple[Label, ...]
    input_id: str
    models: tuple[ModelRecord, ...]
    counterfactuals: tuple[CounterfactualRecord, ...]
    preference: PreferenceSpec = UNIFORM_PREFERENCE
    truth_label: Label | None = None

    def model_ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.models)

    def counterfactual_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.counterfactuals)

    def prediction_on_input(self, model_id: str) -> Label:
        for m in self.models:
            if m.id == model_id:
                return m.prediction
        raise KeyError(model_id)


@dataclass(frozen=True)
class PreferenceRanking:
    """Total preorder over models as numeric ranks; higher = more preferred."""

    rank: dict[str, float]

    def geq(self, a: str, b: str) -> bool:
        return self.rank[a] >= self.rank[b]

    def gt(self, a: str, b: str) -> bool:
        return self.rank[a] > self.rank[b]

    def tied(self, a: str, b: str) -> bool:
        return self.rank[a] == self.rank[b]


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# parsing / serialization


def _expect(obj, key, kind, path, optional=False, default=None):
    if key not in obj:
        if optional:
            return default
        raise SchemaError(f"{path}.{key}: missing required field")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"{path}.{key}: expected integer, got boolean")
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind):
        raise SchemaError(f"{path}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_preference(obj, path) -> PreferenceSpec:
    mode = _expect(obj, "mode", str, path)
    if mode == "uniform":
        return PreferenceSpec(mode="uniform")
    if mode == "ranks":
        ranks = _expect(obj, "ranks", dict, path)
        out = {}
        for mid, value in ranks.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"{path}.ranks.{mid}: expected number")
            out[str(mid)] = float(value)
        return PreferenceSpec(mode="ranks", ranks=out)
    if mode == "priority":
        raw = _expect(obj, "priority", list, path)
        groups = []
        for gi, group in enumerate(raw):
            if not isinstance(group, list) or not all(isinstance(p, str) for p in group):
                raise SchemaError(f"{path}.priority[{gi}]: expected list of property names")
            groups.append(tuple(group))
        return PreferenceSpec(mode="priority", priority=tuple(groups))
    raise SchemaError(f"{path}.mode: unknown preference mode {mode!r}")


def parse_scenario(data: bytes | str) -> Scenario:
    """Parse one scenario document.

    Raises ParseError for malformed JSON (with line/column) and SchemaError
    for missing or ill-typed fields. Semantic invariants (uniqueness,
    own-validity, ...) are the business of validate_scenario.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("$: expected a JSON object")

    label_raw = _expect(obj, "label_set", list, "$")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in label_raw):
        raise SchemaError("$.label_set: expected list of integers")
    input_id = _expect(obj, "input_id", str, "$")
    truth = obj.get("truth_label")
    if truth is not None and (isinstance(truth, bool) or not isinstance(truth, int)):
        raise SchemaError("$.truth_label: expected integer")

    models = []
    for i, raw in enumerate(_expect(obj, "models", list, "$")):
        path = f"$.models[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{path}: expected object")
        mid = _expect(raw, "id", str, path)
        pred = _expect(raw, "prediction", int, path)
        props_raw = _expect(raw, "properties", dict, path, optional=True, default={})
        props = {}
        for name, value in props_raw.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"{path}.properties.{name}: expected number")
            props[str(name)] = float(value)
        models.append(ModelRecord(id=mid, prediction=pred, properties=props))

    model_ids = [m.id for m in models]
    counterfactuals = []
    for i, raw in enumerate(_expect(obj, "counterfactuals", list, "$")):
        path = f"$.counterfactuals[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{path}: expected object")
        cid = _expect(raw, "id", str, path)
        owner = _expect(raw, "owner", str, path)
        preds_raw = _expect(raw, "predictions", dict, path)
        preds = {}
        for mid, value in preds_raw.items():
            if isinstance(value, bool) or not isinstance(value, int):
                raise SchemaError(f"{path}.predictions.{mid}: expected integer label")
            preds[str(mid)] = value
        for mid in model_ids:
            if mid not in preds:
                raise SchemaError(f"{path}.predictions.{mid}: missing entry for model {mid!r}")
        counterfactuals.append(CounterfactualRecord(id=cid, owner=owner, predictions=preds))

    pref_raw = obj.get("preference")
    if pref_raw is None:
        preference = UNIFORM_PREFERENCE
    elif isinstance(pref_raw, dict):
        preference = _parse_preference(pref_raw, "$.preference")
    else:
        raise SchemaError("$.preference: expected object")

    return Scenario(
        label_set=tuple(label_raw),
        input_id=input_id,
        models=tuple(models),
        counterfactuals=tuple(counterfactuals),
        preference=preference,
        truth_label=truth,
    )


def scenario_to_obj(s: Scenario) -> dict:
    obj: dict = {
        "label_set": list(s.label_set),
        "input_id": s.input_id,
        "models": [
            {"id": m.id, "prediction": m.prediction, "properties": dict(sorted(m.properties.items()))}
            for m in s.models
        ],
        "counterfactuals": [
            {"id": c.id, "owner": c.owner, "predictions": dict(sorted(c.predictions.items()))}
            for c in s.counterfactuals
        ],
    }
    pref = s.preference
    if pref.mode == "uniform":
        obj["preference"] = {"mode": "uniform"}
    elif pref.mode == "ranks":
        obj["preference"] = {"mode": "ranks", "ranks": dict(sorted((pref.ranks or {}).items()))}
    else:
        obj["preference"] = {"mode": "priority", "priority": [list(g) for g in pref.priority or ()]}
    if s.truth_label is not None:
        obj["truth_label"] = s.truth_label
    return obj


def serialize_scenario(s: Scenario) -> str:
    """Deterministic single-line JSON encoding; parse(serialize(s)) == s."""
    return json.dumps(scenario_to_obj(s), sort_keys=True, separators=(",", ":"))


def read_batch(text: str) -> list[Scenario]:
    scenarios = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            scenarios.append(parse_scenario(line))
        except (ParseError, SchemaError) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from exc
    return scenarios


# ---------------------------------------------------------------------------
# validation


def validate_scenario(s: Scenario) -> ValidationReport:
    """Check every scenario invariant; violations are data, not exceptions.

    Own-validity failures are hard errors here: scenarios where some c_i does
    not flip its own model are rejected outright rather than modelled.
    """
    out: list[Violation] = []
    labels = set(s.label_set)

    if len(s.label_set) != len(labels):
        out.append(Violation("duplicate-label", "label_set contains duplicates"))
    if len(s.models) < 1:
        out.append(Violation("model-count", "scenario needs at least one model"))
    if len(s.models) != len(s.counterfactuals):
        out.append(
            Violation(
                "count-mismatch",
                f"{len(s.models)} models but {len(s.counterfactuals)} counterfactuals",
            )
        )

    model_ids = [m.id for m in s.models]
    seen = set()
    for mid in model_ids:
        if mid in seen:
            out.append(Violation("duplicate-model-id", f"duplicate model id {mid!r}"))
        seen.add(mid)
    seen = set()
    for c in s.counterfactuals:
        if c.id in seen:
            out.append(Violation("duplicate-ce-id", f"duplicate counterfactual id {c.id!r}"))
        seen.add(c.id)

    for m in s.models:
        if m.prediction not in labels:
            out.append(
                Violation("unknown-label", f"model {m.id}: prediction {m.prediction} not in label_set")
            )
        for name, value in m.properties.items():
            if not math.isfinite(value):
                out.append(Violation("nonfinite-property", f"model {m.id}: property {name} not finite"))

    # property names must form one shared (total) set across models
    if s.models:
        shared = set(s.models[0].properties)
        for m in s.models[1:]:
            if set(m.properties) != shared:
                out.append(
                    Violation("property-mismatch", f"model {m.id}: property names differ from {s.models[0].id}")
                )
                break

    by_id = {m.id: m for m in s.models}
    id_set = set(model_ids)
    for i, c in enumerate(s.counterfactuals):
        if c.owner not in by_id:
            out.append(Violation("missing-owner", f"counterfactual {c.id}: unknown owner {c.owner!r}"))
            continue
        if i < len(s.models) and s.models[i].id != c.owner:
            out.append(
                Violation(
                    "misaligned-owner",
                    f"counterfactual {c.id} at position {i} owned by {c.owner!r}, expected {s.models[i].id!r}",
                )
            )
        missing = id_set - set(c.predictions)
        if missing:
            out.append(
                Violation(
                    "incomplete-predictions",
                    f"counterfactual {c.id}: no prediction for {sorted(missing)}",
                )
            )
        extra = set(c.predictions) - id_set
        if extra:
            out.append(
                Violation("unknown-model-in-predictions", f"counterfactual {c.id}: unknown models {sorted(extra)}")
            )
        for mid, value in c.predictions.items():
            if mid in id_set and value not in labels:
                out.append(
                    Violation("unknown-label", f"counterfactual {c.id}: prediction {value} on {mid} not in label_set")
                )
        owner = by_id[c.owner]
        if c.predictions.get(c.owner) == owner.prediction:
            out.append(
                Violation(
                    "own-invalid",
                    f"counterfactual {c.id} does not flip its own model {c.owner} "
                    f"(both predict {owner.prediction})",
                )
            )

    pref = s.preference
    if pref.mode == "ranks":
        missing = id_set - set(pref.ranks or {})
        if missing:
            out.append(Violation("bad-preference", f"ranks missing for models {sorted(missing)}"))
        for mid, value in (pref.ranks or {}).items():
            if not math.isfinite(value):
                out.append(Violation("bad-preference", f"rank for {mid} not finite"))
    elif pref.mode == "priority":
        declared = set(s.models[0].properties) if s.models else set()
        seen_names: set[str] = set()
        for group in pref.priority or ():
            for name in group:
                if name in seen_names:
                    out.append(Violation("bad-preference", f"property {name!r} appears in two priority groups"))
                seen_names.add(name)
                if name not in declared:
                    out.append(Violation("bad-preference", f"priority names unknown property {name!r}"))

    if s.truth_label is not None and s.truth_label not in labels:
        out.append(Violation("unknown-truth-label", f"truth_label {s.truth_label} not in label_set"))

    return ValidationReport(violations=tuple(out))


# ---------------------------------------------------------------------------
# preferences


def derive_model_preference(s: Scenario, priority: list | tuple) -> PreferenceRanking:
    """Lexicographic ranking over property groups, ties allowed.

    Each group is scored by the arithmetic mean of its members' values; the
    first group where two models differ decides. An empty priority list ranks
    every model equally.
    """
    groups = [tuple(g) if not isinstance(g, str) else (g,) for g in priority]
    seen: set[str] = set()
    for group in groups:
        for name in group:
            if name in seen:
                raise ConfigError(f"property {name!r} appears in more than one priority group")
            seen.add(name)
            for m in s.models:
                if name not in m.properties:
                    raise ConfigError(f"model {m.id} has no property {name!r}")

    if not groups:
        return PreferenceRanking(rank={m.id: 0.0 for m in s.models})

    def score(m: ModelRecord) -> tuple[float, ...]:
        return tuple(sum(m.properties[p] for p in g) / len(g) for g in groups)

    vectors = {m.id: score(m) for m in s.models}
    distinct = sorted(set(vectors.values()))  # ascending: position = rank (higher is better)
    rank_of = {vec: float(i) for i, vec in enumerate(distinct)}
    return PreferenceRanking(rank={mid: rank_of[vec] for mid, vec in vectors.items()})


def resolve_preference(s: Scenario, priority_override: list | tuple | None = None) -> PreferenceRanking:
    """Ranking from an explicit priority list or the scenario's own spec."""
    if priority_override is not None:
        return derive_model_preference(s, priority_override)
    pref = s.preference
    if pref.mode == "uniform":
        return PreferenceRanking(rank={m.id: 0.0 for m in s.models})
    if pref.mode == "ranks":
        ranks = pref.ranks or {}
        for m in s.models:
            if m.id not in ranks:
                raise ConfigError(f"preference ranks missing model {m.id!r}")
        return PreferenceRanking(rank={m.id: float(ranks[m.id]) for m in s.models})
    return derive_model_preference(s, list(pref.priority or ()))


# ---------------------------------------------------------------------------
# synthetic generation


@dataclass(frozen=True)
class GeneratorConfig:
    n_models: int
    label_count: int = 2
    invalidity_rate: float = 0.0
    tie_rate: float = 1.0


def generate_random_scenario(cfg: GeneratorConfig, seed: int, input_id: str | None = None) -> Scenario:
    """Deterministic random scenario; always passes validate_scenario.

    Own-validity holds by construction. Every cross entry M_j(c_i), j != i,
    starts valid and is flipped to invalid with probability invalidity_rate.
    Ranks are drawn sequentially over a shuffled model order; each model ties
    with its predecessor with probability tie_rate.
    """
    if cfg.n_models < 1:
        raise ConfigError("n_models must be >= 1")
    if cfg.label_count < 2:
        raise ConfigError("label_count must be >= 2")
    if not 0.0 <= cfg.invalidity_rate <= 1.0:
        raise ConfigError("invalidity_rate must lie in [0, 1]")
    if not 0.0 <= cfg.tie_rate <= 1.0:
        raise ConfigError("tie_rate must lie in [0, 1]")

    rng = random.Random(derive_seed(seed, "scenario"))
    n = cfg.n_models
    labels = tuple(range(cfg.label_count))
    model_ids = [f"M{i + 1}" for i in range(n)]
    ce_ids = [f"c{i + 1}" for i in range(n)]
    preds = [rng.choice(labels) for _ in range(n)]

    order = list(range(n))
    rng.shuffle(order)
    ranks: dict[str, float] = {}
    level = 0.0
    for k, idx in enumerate(order):
        if k > 0 and rng.random() >= cfg.tie_rate:
            level += 1.0
        ranks[model_ids[idx]] = level

    def flipped(label: Label) -> Label:
        others = [l for l in labels if l != label]
        return others[0] if len(others) == 1 else rng.choice(others)

    counterfactuals = []
    for i in range(n):
        row: dict[str, Label] = {}
        for j in range(n):
            if j == i:
                row[model_ids[j]] = flipped(preds[j])
            else:
                valid_label = flipped(preds[j])
                invalid = rng.random() < cfg.invalidity_rate
                row[model_ids[j]] = preds[j] if invalid else valid_label
        counterfactuals.append(CounterfactualRecord(id=ce_ids[i], owner=model_ids[i], predictions=row))

    return Scenario(
        label_set=labels,
        input_id=input_id if input_id is not None else f"rnd-{seed}",
        models=tuple(ModelRecord(id=model_ids[i], prediction=preds[i]) for i in range(n)),
        counterfactuals=tuple(counterfactuals),
        preference=PreferenceSpec(mode="ranks", ranks=ranks),
    )
