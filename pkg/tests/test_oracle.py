import numpy as np
import pytest

from specmeet import (
    EmptyFamily,
    HermitianOperator,
    InvalidInput,
    assemble_infimum,
    generate_lower_bound,
    is_logic_leq,
    measure_of,
    perturbed_candidate,
    verify_infimum,
)

from conftest import random_family

FIXTURE_A = HermitianOperator(np.diag([1.0, 2.0, 0.0]))
FIXTURE_B = HermitianOperator(np.diag([1.0, 3.0, 0.0]))


class TestGenerateLowerBound:
    def test_fixture_bounds_live_on_the_shared_line(self):
        seen = set()
        for seed in range(40):
            bound = generate_lower_bound([FIXTURE_A, FIXTURE_B], seed)
            if bound.norm_fro() == 0.0:
                seen.add("zero")
                continue
            np.testing.assert_allclose(
                bound.entries, np.diag([1.0, 0.0, 0.0]), atol=1e-10
            )
            seen.add("line")
        assert seen == {"zero", "line"}

    def test_single_operator_bounds_use_its_spectrum(self, rng):
        for seed in range(60):
            family = random_family(rng, members=1)
            bound = generate_lower_bound(family, seed)
            assert is_logic_leq(bound, family[0])
            support = set(np.round(measure_of(family[0]).support_nonzero(), 6))
            for value in measure_of(bound).support_nonzero():
                assert round(value, 6) in support

    def test_zero_family(self):
        bound = generate_lower_bound([HermitianOperator.zeros(3)], seed=5)
        assert bound.norm_fro() == 0.0

    def test_soundness_over_many_seeds(self, rng):
        for trial in range(60):
            family = random_family(rng)
            bound = generate_lower_bound(family, seed=trial)
            for member in family:
                assert is_logic_leq(bound, member)

    def test_deterministic_given_seed(self):
        first = generate_lower_bound([FIXTURE_A, FIXTURE_B], seed=123)
        second = generate_lower_bound([FIXTURE_A, FIXTURE_B], seed=123)
        np.testing.assert_array_equal(first.entries, second.entries)

    def test_empty_family(self):
        with pytest.raises(EmptyFamily):
            generate_lower_bound([], seed=0)


class TestVerifyInfimum:
    def test_single_operator_is_its_own_infimum(self, rng):
        op = random_family(rng, members=1)[0]
        verdict = verify_infimum([op], op, trials=10, seed=3)
        assert verdict.passed

    def test_fixture_infimum_passes(self):
        verdict = verify_infimum(
            [FIXTURE_A, FIXTURE_B],
            HermitianOperator(np.diag([1.0, 0.0, 0.0])),
            trials=25,
            seed=11,
        )
        assert verdict.passed
        assert verdict.seed == 11
        assert verdict.trials == 25

    def test_zero_candidate_fails_maximality(self):
        verdict = verify_infimum(
            [FIXTURE_A, FIXTURE_B], HermitianOperator.zeros(3), trials=25, seed=1
        )
        assert not verdict.passed
        failing = {c.name for c in verdict.checks if not c.passed}
        assert "g_matches_candidate" in failing

    def test_overclaiming_candidate_fails_lower_bound(self):
        verdict = verify_infimum(
            [FIXTURE_A, FIXTURE_B],
            HermitianOperator(np.diag([1.0, 1.0, 0.0])),
            trials=5,
            seed=1,
        )
        assert not verdict.passed
        failing = {c.name for c in verdict.checks if not c.passed}
        assert "candidate_lower_bound_spectral" in failing

    def test_assembled_infimum_verifies_across_families(self, rng):
        for trial in range(200):
            family = random_family(rng)
            result = assemble_infimum(family)
            verdict = verify_infimum(
                family, result.operator, trials=10, seed=trial
            )
            assert verdict.passed, [c for c in verdict.checks if not c.passed]

    def test_checks_sorted_and_conjunction(self, rng):
        family = random_family(rng)
        result = assemble_infimum(family)
        verdict = verify_infimum(family, result.operator, trials=10, seed=9)
        names = [c.name for c in verdict.checks]
        assert names == sorted(names)
        assert verdict.passed == all(c.passed for c in verdict.checks)

    def test_deterministic_verdict(self, rng):
        family = random_family(rng)
        candidate = assemble_infimum(family).operator
        first = verify_infimum(family, candidate, trials=15, seed=42)
        second = verify_infimum(family, candidate, trials=15, seed=42)
        assert first == second

    def test_verdict_depends_on_seed(self):
        first = verify_infimum(
            [FIXTURE_A, FIXTURE_B],
            HermitianOperator(np.diag([1.0, 0.0, 0.0])),
            trials=5,
            seed=1,
        )
        second = verify_infimum(
            [FIXTURE_A, FIXTURE_B],
            HermitianOperator(np.diag([1.0, 0.0, 0.0])),
            trials=5,
            seed=2,
        )
        assert first.passed and second.passed
        assert first.seed != second.seed

    def test_trials_must_be_positive(self):
        with pytest.raises(InvalidInput):
            verify_infimum([FIXTURE_A], FIXTURE_A, trials=0, seed=0)


class TestPerturbationSensitivity:
    def test_perturbed_candidates_are_rejected(self, rng):
        rejected = 0
        total = 40
        for trial in range(total):
            family = random_family(rng)
            candidate = assemble_infimum(family).operator
            corrupted = perturbed_candidate(candidate, 1e-3, seed=trial)
            verdict = verify_infimum(family, corrupted, trials=10, seed=trial)
            rejected += not verdict.passed
        assert rejected / total >= 0.9

    def test_perturbation_size_must_be_positive(self):
        with pytest.raises(InvalidInput):
            perturbed_candidate(FIXTURE_A, 0.0, seed=1)
