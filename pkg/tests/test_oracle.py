import pytest
from hypothesis import given, settings

from rae.errors import CapacityError
from rae.framework import AAF, build_aaf, build_baf
from rae.oracle import brute_force_extensions, brute_force_preferred_aaf
from rae.scenario import GeneratorConfig, generate_random_scenario, resolve_preference
from rae.semantics import (
    Semantics,
    enumerate_extensions,
    enumerate_preferred_aaf,
    map_aaf_extension_to_baf,
)

from .conftest import ids, load_fixture, names_of
from .strategies import free_scenarios


class TestBruteForce:
    def test_rep2_s_preferred(self):
        s = load_fixture("fix_r2")
        baf = build_baf(s, resolve_preference(s))
        fam = names_of(baf, brute_force_extensions(baf, Semantics.S_PREFERRED))
        assert fam == {ids("M1", "M2", "c1", "c2"), ids("M3", "c3")}

    def test_thm3_d_preferred(self):
        s = load_fixture("fix_thm3_nonempty")
        baf = build_baf(s, resolve_preference(s))
        fam = names_of(baf, brute_force_extensions(baf, Semantics.D_PREFERRED))
        assert fam == {ids("c1", "c2"), ids("M1", "c1"), ids("M2", "c2")}

    def test_single_pair_stable(self):
        s = load_fixture("fix_single")
        baf = build_baf(s, resolve_preference(s))
        fam = names_of(baf, brute_force_extensions(baf, Semantics.STABLE))
        assert fam == {ids("M1", "c1")}

    def test_capacity_limit(self):
        s = generate_random_scenario(GeneratorConfig(n_models=9), seed=0)
        baf = build_baf(s, resolve_preference(s))
        with pytest.raises(CapacityError):
            brute_force_extensions(baf, Semantics.S_PREFERRED)

    def test_preferred_aaf_loan(self):
        aaf = AAF(
            arguments=frozenset({"M1", "M2", "M3"}),
            attacks=frozenset({("M1", "M3"), ("M3", "M1"), ("M2", "M3"), ("M3", "M2")}),
        )
        assert brute_force_preferred_aaf(aaf).as_sets() == {
            frozenset({"M1", "M2"}),
            frozenset({"M3"}),
        }

    def test_preferred_aaf_ex8(self):
        s = load_fixture("fix_ex5")
        aaf = build_aaf(s, resolve_preference(s))
        assert brute_force_preferred_aaf(aaf).as_sets() == {
            frozenset({("M2", "c2")}),
            frozenset({("M4", "c4"), ("M5", "c5")}),
        }

    def test_preferred_aaf_no_attacks(self):
        aaf = AAF(arguments=frozenset({"a", "b"}), attacks=frozenset())
        assert brute_force_preferred_aaf(aaf).as_sets() == {frozenset({"a", "b"})}


class TestOracleEquivalence:
    @given(free_scenarios(max_models=5))
    @settings(max_examples=60, deadline=None)
    def test_enumerator_matches_oracle(self, s):
        baf = build_baf(s, resolve_preference(s))
        for sem in Semantics:
            fast = enumerate_extensions(baf, sem).as_sets()
            slow = brute_force_extensions(baf, sem).as_sets()
            assert fast == slow, sem

    @given(free_scenarios(max_models=5))
    @settings(max_examples=40, deadline=None)
    def test_oracle_level_aaf_equivalence(self, s):
        pref = resolve_preference(s)
        baf, aaf = build_baf(s, pref), build_aaf(s, pref)
        via_pairs = {
            map_aaf_extension_to_baf(e) for e in brute_force_preferred_aaf(aaf).extensions
        }
        s_pref = {baf.names(e) for e in brute_force_extensions(baf, Semantics.S_PREFERRED).extensions}
        assert via_pairs == s_pref

    @given(free_scenarios(max_models=5))
    @settings(max_examples=40, deadline=None)
    def test_preferred_aaf_enumerator_matches_oracle(self, s):
        pref = resolve_preference(s)
        aaf = build_aaf(s, pref)
        assert enumerate_preferred_aaf(aaf).as_sets() == brute_force_preferred_aaf(aaf).as_sets()
