"""Recourse-aware ensembling under model multiplicity."""

from .ensembling import (
    Solution,
    argumentative_ensemble,
    augmented_ensemble,
    naive_ensemble,
    robust_ensemble,
)
from .errors import CapacityError, ConfigError, ParseError, RaeError, SchemaError
from .framework import AAF, BAF, ArgKind, Argument, build_aaf, build_baf
from .oracle import brute_force_extensions, brute_force_preferred_aaf
from .properties import BatchReport, MethodSpec, PropertyId, check_property, evaluate_batch
from .scenario import (
    GeneratorConfig,
    PreferenceRanking,
    Scenario,
    derive_model_preference,
    generate_random_scenario,
    parse_scenario,
    resolve_preference,
    serialize_scenario,
    validate_scenario,
)
from .semantics import (
    ExtensionSet,
    Semantics,
    enumerate_extensions,
    enumerate_preferred_aaf,
    map_aaf_extension_to_baf,
    map_baf_extension_to_aaf,
)

__version__ = "0.1.0"

__all__ = [
    "AAF",
    "ArgKind",
    "Argument",
    "BAF",
    "BatchReport",
    "CapacityError",
    "ConfigError",
    "ExtensionSet",
    "GeneratorConfig",
    "MethodSpec",
    "ParseError",
    "PreferenceRanking",
    "PropertyId",
    "RaeError",
    "Scenario",
    "SchemaError",
    "Semantics",
    "Solution",
    "argumentative_ensemble",
    "augmented_ensemble",
    "brute_force_extensions",
    "brute_force_preferred_aaf",
    "build_aaf",
    "build_baf",
    "check_property",
    "derive_model_preference",
    "enumerate_extensions",
    "enumerate_preferred_aaf",
    "evaluate_batch",
    "generate_random_scenario",
    "map_aaf_extension_to_baf",
    "map_baf_extension_to_aaf",
    "naive_ensemble",
    "parse_scenario",
    "resolve_preference",
    "robust_ensemble",
    "serialize_scenario",
    "validate_scenario",
]
