"""Command-line interface.

Commands: solve, evaluate, oracle-check, bench, gen. Stdout carries data,
stderr carries logs. Exit codes: 0 success, 1 validation/parse failure,
2 capacity exceeded, 3 oracle mismatch, 64 usage or configuration error.
The RAE_MAX_ARGS environment variable overrides the enumeration capacity.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import statistics
import sys
import time
from pathlib import Path

from .ensembling import argumentative_ensemble
from .errors import CapacityError, ConfigError, ParseError, RaeError, SchemaError
from .framework import build_aaf, build_baf, to_dot
from .oracle import brute_force_extensions, brute_force_preferred_aaf
from .properties import MethodSpec, evaluate_batch
from .scenario import (
    GeneratorConfig,
    derive_seed,
    generate_random_scenario,
    parse_scenario,
    read_batch,
    resolve_preference,
    serialize_scenario,
    validate_scenario,
)
from .semantics import (
    Semantics,
    enumerate_extensions,
    enumerate_preferred_aaf,
    map_aaf_extension_to_baf,
    parse_semantics,
)
from .properties import run_method

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CAPACITY = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 64


class _UsageExit(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 instead of argparse's default 2
        raise _UsageExit(message)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _max_args_from_env() -> int | None:
    raw = os.environ.get("RAE_MAX_ARGS")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"RAE_MAX_ARGS must be an integer, got {raw!r}") from exc


def _parse_priority(text: str) -> list[tuple[str, ...]]:
    """'accuracy,simplicity' -> [('accuracy',), ('simplicity',)];
    '+' joins properties into one equally-weighted group."""
    groups = []
    for chunk in text.split(","):
        names = tuple(n.strip() for n in chunk.split("+") if n.strip())
        if not names:
            raise ConfigError(f"empty priority group in {text!r}")
        groups.append(names)
    return groups


def _parse_method(text: str) -> MethodSpec:
    parts = text.split(":", 2)
    kind = parts[0]
    if kind in ("naive", "augmented", "robust"):
        if len(parts) > 1:
            raise ConfigError(f"method {kind!r} takes no arguments")
        return MethodSpec(kind=kind)
    if kind in ("arg", "argumentative"):
        if len(parts) < 2:
            raise ConfigError("argumentative method needs a semantics, e.g. arg:s-preferred")
        try:
            sem = parse_semantics(parts[1])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        priority = tuple(_parse_priority(parts[2])) if len(parts) == 3 else None
        return MethodSpec(kind="argumentative", semantics=sem, priority=priority)
    raise ConfigError(f"unknown method {text!r}")


def _load_scenario(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_scenario(data)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# commands


def _cmd_solve(args) -> int:
    scenario = _load_scenario(args.scenario)
    report = validate_scenario(scenario)
    if not report.ok:
        for v in report.violations:
            _log(f"validation: {v.code}: {v.message}")
        return EXIT_VALIDATION

    if args.method in ("arg", "argumentative"):
        if not args.semantics:
            raise ConfigError("argumentative method needs --semantics or arg:<semantics>")
        try:
            sem = parse_semantics(args.semantics)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        spec = MethodSpec(kind="argumentative", semantics=sem)
    else:
        spec = _parse_method(args.method)
        if spec.kind == "argumentative" and args.semantics:
            raise ConfigError("pass the semantics either as arg:<sem> or via --semantics, not both")

    priority = tuple(_parse_priority(args.pref)) if args.pref else None
    if spec.kind == "argumentative" and priority is not None:
        spec = MethodSpec(kind="argumentative", semantics=spec.semantics, priority=priority)

    if spec.kind == "argumentative":
        pref = resolve_preference(scenario, list(spec.priority) if spec.priority else None)
        solution = argumentative_ensemble(
            scenario,
            spec.semantics,
            pref=pref,
            seed=args.seed,
            max_arguments=_max_args_from_env(),
            keep_extensions=args.explain,
        )
        if args.dot:
            Path(args.dot).write_text(to_dot(build_baf(scenario, pref)), encoding="utf-8")
    else:
        solution = run_method(scenario, spec, args.seed)
        if args.dot:
            pref = resolve_preference(scenario)
            Path(args.dot).write_text(to_dot(build_baf(scenario, pref)), encoding="utf-8")

    _write_output(json.dumps(solution.to_json_obj(), indent=2, sort_keys=True), args.out)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    try:
        text = Path(args.batch).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {args.batch}: {exc}") from exc
    batch = read_batch(text)
    if not batch:
        raise ConfigError("batch file holds no scenarios")
    for s in batch:
        report = validate_scenario(s)
        if not report.ok:
            first = report.violations[0]
            _log(f"validation: scenario {s.input_id}: {first.code}: {first.message}")
            return EXIT_VALIDATION

    methods = [_parse_method(m) for m in args.method]
    report = evaluate_batch(batch, methods, seed=args.seed)
    if args.format == "csv":
        _write_output(report.to_csv(with_timing=args.with_timing), args.out)
    else:
        _write_output(report.to_json(), args.out)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    if args.max_models * 2 > 16:
        raise CapacityError(
            f"oracle covers at most 8 models (16 arguments); got --max-models {args.max_models}"
        )
    rng = random.Random(derive_seed(args.seed, "oracle-check"))
    checked = 0
    for case in range(args.n):
        cfg = GeneratorConfig(
            n_models=rng.randint(1, args.max_models),
            label_count=2 if rng.random() < 0.8 else 3,
            invalidity_rate=rng.choice([0.0, 0.2, 0.5]),
            tie_rate=rng.choice([0.0, 0.5, 1.0]),
        )
        scenario = generate_random_scenario(cfg, seed=derive_seed(args.seed, f"case:{case}"))
        pref = resolve_preference(scenario)
        baf = build_baf(scenario, pref)
        families = {}
        for sem in Semantics:
            fast = enumerate_extensions(baf, sem).as_sets()
            slow = brute_force_extensions(baf, sem).as_sets()
            families[sem] = fast
            if fast != slow:
                _write_reproducer(args, scenario, sem, fast, slow, baf)
                return EXIT_MISMATCH
        if families[Semantics.STABLE] != families[Semantics.D_PREFERRED]:
            _write_reproducer(args, scenario, "stable-vs-d-preferred", families[Semantics.STABLE],
                              families[Semantics.D_PREFERRED], baf)
            return EXIT_MISMATCH
        if families[Semantics.C_PREFERRED] != families[Semantics.S_PREFERRED]:
            _write_reproducer(args, scenario, "c-vs-s-preferred", families[Semantics.C_PREFERRED],
                              families[Semantics.S_PREFERRED], baf)
            return EXIT_MISMATCH
        aaf = build_aaf(scenario, pref)
        via_pairs = {map_aaf_extension_to_baf(e) for e in brute_force_preferred_aaf(aaf).extensions}
        s_preferred = {baf.names(e) for e in families[Semantics.S_PREFERRED]}
        if via_pairs != s_preferred:
            _write_reproducer(args, scenario, "aaf-equivalence", via_pairs, s_preferred, baf)
            return EXIT_MISMATCH
        checked += 1
    _log(f"oracle-check: {checked} scenarios, all semantics agree")
    print(json.dumps({"checked": checked, "mismatches": 0}))
    return EXIT_OK


def _write_reproducer(args, scenario, tag, got, want, baf) -> None:
    def _render(family):
        out = []
        for ext in family:
            ids = ext if all(isinstance(x, str) for x in ext) else baf.names(ext)
            out.append(sorted(ids))
        return sorted(out)

    path = Path(args.reproducer)
    path.write_text(
        json.dumps(
            {
                "check": str(tag),
                "scenario": json.loads(serialize_scenario(scenario)),
                "got": _render(got),
                "expected": _render(want),
            },
            indent=2,
            sort_keys=True,
        ),
        encoding="utf-8",
    )
    _log(f"oracle-check: mismatch on {tag}; reproducer written to {path}")


def _cmd_bench(args) -> int:
    sizes = []
    for chunk in args.sizes.split(","):
        try:
            size = int(chunk)
        except ValueError as exc:
            raise ConfigError(f"bad size {chunk!r}") from exc
        if size < 1:
            raise ConfigError(f"sizes must be >= 1, got {size}")
        sizes.append(size)
    semantics = [parse_semantics(t.strip()) for t in args.semantics.split(",")]
    max_args = _max_args_from_env()

    lines = ["n_models,semantics,mean_ms,p95_ms"]
    means: dict[tuple[int, str], float] = {}
    for size in sizes:
        scenarios = [
            generate_random_scenario(
                GeneratorConfig(n_models=size, invalidity_rate=args.invalidity),
                seed=derive_seed(args.seed, f"bench:{size}:{i}"),
            )
            for i in range(args.repeats)
        ]
        for sem in semantics:
            samples = []
            for s in scenarios:
                start = time.perf_counter()
                argumentative_ensemble(s, sem, seed=args.seed, max_arguments=max_args)
                samples.append((time.perf_counter() - start) * 1000.0)
            mean_ms = statistics.fmean(samples)
            p95 = sorted(samples)[max(0, int(round(0.95 * len(samples))) - 1)]
            means[(size, sem.value)] = mean_ms
            lines.append(f"{size},{sem.value},{mean_ms:.3f},{p95:.3f}")
    for size in sizes:
        s_mean = means.get((size, Semantics.S_PREFERRED.value))
        d_mean = means.get((size, Semantics.D_PREFERRED.value))
        if s_mean is not None and d_mean is not None and s_mean > d_mean:
            _log(f"bench: note: s-preferred slower than d-preferred at {size} models "
                 f"({s_mean:.1f}ms vs {d_mean:.1f}ms)")
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_gen(args) -> int:
    cfg = GeneratorConfig(
        n_models=args.models,
        label_count=args.labels,
        invalidity_rate=args.invalidity,
        tie_rate=args.tie_rate,
    )
    lines = []
    for i in range(args.n):
        scenario = generate_random_scenario(
            cfg, seed=derive_seed(args.seed, f"gen:{i}"), input_id=f"x-{i:05d}"
        )
        lines.append(serialize_scenario(scenario))
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    parser = _Parser(prog="rae", description="Recourse-aware ensembling under model multiplicity")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one scenario with one method")
    p.add_argument("--scenario", required=True)
    p.add_argument("--method", default="arg:s-preferred",
                   help="naive | augmented | robust | arg:<semantics>[:<priority>]")
    p.add_argument("--semantics", default=None,
                   help="semantics when --method is plain 'arg'")
    p.add_argument("--pref", default=None,
                   help="priority list, e.g. accuracy,simplicity or accuracy+simplicity")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--explain", action="store_true", help="include the full extension family")
    p.add_argument("--dot", default=None, help="write the framework as DOT to this path")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("evaluate", help="run methods over a JSON-lines batch")
    p.add_argument("--batch", required=True)
    p.add_argument("--method", action="append", required=True,
                   help="repeatable; naive | augmented | robust | arg:<semantics>[:<priority>]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--with-timing", action="store_true",
                   help="fill the mean_time_ms column (output no longer byte-stable)")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("oracle-check", help="fuzz the enumerator against the brute-force oracle")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--max-models", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reproducer", default="rae-oracle-counterexample.json")
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("bench", help="time argumentative ensembling across model counts")
    p.add_argument("--sizes", default="10,20,30")
    p.add_argument("--semantics", default="s-preferred,d-preferred")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--invalidity", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="emit a JSON-lines batch of random scenarios")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--models", type=int, default=10)
    p.add_argument("--labels", type=int, default=2)
    p.add_argument("--invalidity", type=float, default=0.0)
    p.add_argument("--tie-rate", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageExit as exc:
        _log(f"usage error: {exc}")
        return EXIT_USAGE
    except ConfigError as exc:
        _log(f"configuration error: {exc}")
        return EXIT_USAGE
    except (ParseError, SchemaError) as exc:
        _log(f"input error: {exc}")
        return EXIT_VALIDATION
    except CapacityError as exc:
        _log(f"capacity error: {exc}")
        return EXIT_CAPACITY
    except RaeError as exc:
        _log(f"error: {exc}")
        return EXIT_VALIDATION


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
