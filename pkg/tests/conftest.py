from __future__ import annotations

from pathlib import Path

import pytest

from rae.scenario import Scenario, parse_scenario

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = (
    "fix_loan",
    "fix_ex1",
    "fix_ex5",
    "fix_r1",
    "fix_r2",
    "fix_thm3_nonempty",
    "fix_thm3_coherence",
    "fix_single",
)


def load_fixture(name: str) -> Scenario:
    return parse_scenario((FIXTURES / f"{name}.json").read_bytes())


@pytest.fixture(scope="session")
def fixtures() -> dict[str, Scenario]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


def names_of(baf, extension_set):
    """Extension family as a set of frozensets of argument ids."""
    return {baf.names(e) for e in extension_set.extensions}


def ids(*xs: str) -> frozenset[str]:
    return frozenset(xs)
