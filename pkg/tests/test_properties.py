import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from rae.ensembling import argumentative_ensemble, augmented_ensemble, robust_ensemble
from rae.errors import ConfigError
from rae.properties import (
    MethodSpec,
    PropertyId,
    check_all_properties,
    check_property,
    evaluate_batch,
)
from rae.semantics import Semantics

from .conftest import FIXTURE_NAMES, load_fixture
from .strategies import free_scenarios, generated_scenarios

PAPER_BATCH = ("fix_loan", "fix_ex1", "fix_ex5", "fix_r1", "fix_r2")


class TestCheckProperty:
    def test_ex1_augmented_validity_fails(self):
        s = load_fixture("fix_ex1")
        sol = augmented_ensemble(s, seed=0)
        assert not check_property(s, sol, PropertyId.COUNTERFACTUAL_VALIDITY)

    def test_ex1_robust_non_emptiness_fails(self):
        s = load_fixture("fix_ex1")
        sol = robust_ensemble(s, seed=0)
        assert not check_property(s, sol, PropertyId.NON_EMPTINESS)

    def test_ex5_s_preferred_majority_vote_fails(self):
        s = load_fixture("fix_ex5")
        sol = argumentative_ensemble(s, Semantics.S_PREFERRED, seed=0)
        assert not check_property(s, sol, PropertyId.MAJORITY_VOTE)

    def test_single_model_agreement(self):
        s = load_fixture("fix_single")
        sol = augmented_ensemble(s, seed=0)
        assert check_property(s, sol, PropertyId.MODEL_AGREEMENT)

    @given(generated_scenarios(), st.integers(0, 20))
    @settings(max_examples=40, deadline=None)
    def test_majority_vote_implies_model_agreement(self, s, seed):
        for sol in (
            augmented_ensemble(s, seed),
            robust_ensemble(s, seed),
            argumentative_ensemble(s, Semantics.S_PREFERRED, seed=seed),
            argumentative_ensemble(s, Semantics.D_PREFERRED, seed=seed),
        ):
            props = check_all_properties(s, sol)
            if props[PropertyId.MAJORITY_VOTE]:
                assert props[PropertyId.MODEL_AGREEMENT]


class TestEvaluateBatch:
    def test_augmented_validity_rate_on_paper_fixtures(self):
        batch = [load_fixture(n) for n in PAPER_BATCH]
        report = evaluate_batch(batch, [MethodSpec(kind="augmented")], seed=0)
        rate = report.rows[0].rates[PropertyId.COUNTERFACTUAL_VALIDITY]
        # only fix_loan's augmented solution keeps every counterfactual valid
        assert rate == pytest.approx(0.2)

    def test_s_preferred_guaranteed_rates_are_one(self):
        batch = [load_fixture(n) for n in FIXTURE_NAMES]
        spec = MethodSpec(kind="argumentative", semantics=Semantics.S_PREFERRED)
        report = evaluate_batch(batch, [spec], seed=0)
        rates = report.rows[0].rates
        for prop in (
            PropertyId.NON_EMPTINESS,
            PropertyId.MODEL_AGREEMENT,
            PropertyId.COUNTERFACTUAL_VALIDITY,
            PropertyId.COUNTERFACTUAL_COHERENCE,
        ):
            assert rates[prop] == 1.0

    def test_empty_method_list_rejected(self):
        with pytest.raises(ConfigError):
            evaluate_batch([load_fixture("fix_loan")], [], seed=0)

    def test_empty_batch_rejected(self):
        with pytest.raises(ConfigError):
            evaluate_batch([], [MethodSpec(kind="naive")], seed=0)

    def test_accuracy_absent_without_truth_labels(self):
        report = evaluate_batch([load_fixture("fix_loan")], [MethodSpec(kind="naive")], seed=0)
        assert report.rows[0].accuracy is None

    def test_simplicity_absent_when_property_missing(self):
        report = evaluate_batch([load_fixture("fix_loan")], [MethodSpec(kind="naive")], seed=0)
        assert report.rows[0].mean_simplicity is None

    def test_simplicity_present_when_declared(self):
        report = evaluate_batch([load_fixture("fix_ex5")], [MethodSpec(kind="naive")], seed=0)
        # naive selects M1,M2,M3 with simplicities 0, .75, 1
        assert report.rows[0].mean_simplicity == pytest.approx((0.0 + 0.75 + 1.0) / 3)

    def test_batch_order_invariance(self):
        batch = [load_fixture(n) for n in PAPER_BATCH]
        methods = [MethodSpec(kind="augmented"), MethodSpec(kind="robust")]
        forward = evaluate_batch(batch, methods, seed=3)
        backward = evaluate_batch(list(reversed(batch)), methods, seed=3)
        for a, b in zip(forward.rows, backward.rows):
            assert a.rates == b.rates
            assert a.accuracy == b.accuracy
            assert a.mean_simplicity == b.mean_simplicity

    def test_duplicate_method_rejected(self):
        with pytest.raises(ConfigError):
            evaluate_batch(
                [load_fixture("fix_loan")],
                [MethodSpec(kind="naive"), MethodSpec(kind="naive")],
                seed=0,
            )

    def test_csv_shape(self):
        batch = [load_fixture("fix_loan")]
        methods = [MethodSpec(kind="naive"), MethodSpec(kind="argumentative", semantics=Semantics.S_PREFERRED)]
        csv_text = evaluate_batch(batch, methods, seed=0).to_csv()
        lines = csv_text.strip().splitlines()
        assert len(lines) == 3
        assert lines[0].split(",") == [
            "method", "acc", "simp",
            "non_emptiness", "non_triviality", "model_agreement",
            "majority_vote", "counterfactual_validity", "counterfactual_coherence",
            "mean_time_ms",
        ]
        assert lines[1].startswith("naive,")
        assert lines[2].startswith("arg:s-preferred,")


class TestGuaranteedRatesOnRandomScenarios:
    @given(free_scenarios())
    @settings(max_examples=25, deadline=None)
    def test_s_preferred_four_guarantees(self, s):
        spec = MethodSpec(kind="argumentative", semantics=Semantics.S_PREFERRED)
        report = evaluate_batch([s], [spec], seed=1)
        rates = report.rows[0].rates
        for prop in (
            PropertyId.NON_EMPTINESS,
            PropertyId.MODEL_AGREEMENT,
            PropertyId.COUNTERFACTUAL_VALIDITY,
            PropertyId.COUNTERFACTUAL_COHERENCE,
        ):
            assert rates[prop] == 1.0
