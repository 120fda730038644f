#!/usr/bin/env python3
"""Walk through the bundled worked examples with every ensembling method.

Prints, per fixture: the attack relation of its bipolar framework, the
extension families of all four semantics, and the solution each method
returns. Useful as a quick end-to-end sanity run:

    python scripts/paper_walkthrough.py [fixture ...]
"""

from __future__ import annotations

import sys
from pathlib import Path

from rae.ensembling import (
    argumentative_ensemble,
    augmented_ensemble,
    naive_ensemble,
    robust_ensemble,
)
from rae.framework import build_baf
from rae.scenario import parse_scenario, resolve_preference, validate_scenario
from rae.semantics import Semantics, enumerate_extensions

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DEFAULT = ("fix_loan", "fix_ex1", "fix_ex5", "fix_r1", "fix_r2",
           "fix_thm3_nonempty", "fix_thm3_coherence")


def show(name: str) -> None:
    scenario = parse_scenario((FIXTURES / f"{name}.json").read_bytes())
    report = validate_scenario(scenario)
    if not report.ok:
        raise SystemExit(f"{name}: invalid fixture: {report.violations[0].message}")
    pref = resolve_preference(scenario)
    baf = build_baf(scenario, pref)

    print(f"== {name} ({len(scenario.models)} models) ==")
    ranks = sorted(pref.rank.items(), key=lambda kv: (-kv[1], kv[0]))
    print("  ranks:   " + ", ".join(f"{mid}={r:g}" for mid, r in ranks))
    attacks = sorted((baf.name_of(a), baf.name_of(b)) for a, b in baf.attacks)
    print("  attacks: " + (", ".join(f"{a}->{b}" for a, b in attacks) or "none"))
    for sem in Semantics:
        family = enumerate_extensions(baf, sem)
        rendered = ["{" + ",".join(sorted(baf.names(e))) + "}" for e in family.extensions]
        print(f"  {sem.value:<12} {{{', '.join(rendered)}}}")
    for label, solve in (
        ("naive", lambda: naive_ensemble(scenario, seed=0)),
        ("augmented", lambda: augmented_ensemble(scenario, seed=0)),
        ("robust", lambda: robust_ensemble(scenario, seed=0)),
        ("arg:s-pref", lambda: argumentative_ensemble(scenario, Semantics.S_PREFERRED, seed=0)),
        ("arg:d-pref", lambda: argumentative_ensemble(scenario, Semantics.D_PREFERRED, seed=0)),
    ):
        sol = solve()
        members = ",".join(sorted(sol.members()))
        print(f"  {label:<12} label={sol.aggregated_label} members={{{members}}}")
    print()


def main() -> None:
    names = sys.argv[1:] or DEFAULT
    for name in names:
        show(name)


if __name__ == "__main__":
    main()
