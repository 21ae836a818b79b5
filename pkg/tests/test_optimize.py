import numpy as np
import pytest

from boundkey import (
    MODE_FULL,
    MODE_STRUCTURED,
    LocalFilter,
    OptimizationProblem,
    kdw_of_state,
    make_family,
    make_family1,
    make_family3,
    objective,
    optimize,
    sweep,
)
from boundkey.filtering import PARAM_FLOOR
from boundkey.optimize import _FastObjective, _lcg_uniforms, _structured_starts

from conftest import family_grid

EPS_FILTER = LocalFilter(1, PARAM_FLOOR, PARAM_FLOOR, 1, 1, 1, 1, 1)


class TestObjective:
    def test_identity_filter_equals_unfiltered_rate(self):
        state = make_family1(0.1)
        val = objective(state, LocalFilter.identity())
        assert abs(val - (1 - np.log2(3))) < 1e-12

    def test_suppressing_filter_near_success_probability(self):
        state = make_family1(0.1)
        val = objective(state, EPS_FILTER)
        expected_prob = (0.4 + 1e-8 * 0.8) / 1.2
        assert abs(val - expected_prob) < 1e-6
        assert val < expected_prob

    def test_approaches_one_at_top_of_family1(self):
        assert objective(make_family1(0.5), EPS_FILTER) > 1 - 1e-10

    def test_fast_path_matches_public_path(self, rng):
        for fam in (1, 2, 3):
            lo, hi = family_grid(f"Family{fam}", 2)
            for p in (lo, 0.5 * (lo + hi), hi):
                state = make_family(fam, float(p))
                fast = _FastObjective(state)
                for _ in range(25):
                    f = LocalFilter.from_params(rng.uniform(PARAM_FLOOR, 1.0, 8))
                    assert abs(fast(f.as_tuple()) - objective(state, f)) < 1e-12


class TestOptimize:
    def test_structured_hits_floor(self):
        res = optimize(OptimizationProblem(make_family1(0.3), mode=MODE_STRUCTURED))
        assert res.filter.b == PARAM_FLOOR
        assert res.filter.c == PARAM_FLOOR
        assert res.filter.a == res.filter.d == 1.0
        assert res.at_lower_bound == ["b", "c"]
        assert res.kdw > 0.999

    def test_full_recovers_reported_structure(self):
        res = optimize(OptimizationProblem(make_family1(0.3), mode=MODE_FULL), seed=0)
        prm = res.filter.as_tuple()
        assert all(v >= 0.999 for v in (prm[0], prm[3], prm[4], prm[5], prm[6], prm[7]))
        assert abs(prm[1] - prm[2]) <= 1e-3
        assert res.kdw >= 0.99

    def test_deterministic_per_seed(self):
        problem = OptimizationProblem(make_family3(0.14), mode=MODE_FULL)
        first = optimize(problem, seed=123)
        second = optimize(problem, seed=123)
        assert first == second
        other = optimize(problem, seed=124)
        assert other.effective_rate == pytest.approx(first.effective_rate, abs=1e-9)

    def test_structured_bounded_by_full(self):
        for fam, p in ((1, 0.1), (1, 0.45), (2, 0.13), (3, 0.14)):
            problem = OptimizationProblem(make_family(fam, p), mode=MODE_STRUCTURED)
            structured = optimize(problem, seed=0)
            full = optimize(OptimizationProblem(make_family(fam, p), mode=MODE_FULL), seed=0)
            assert structured.effective_rate <= full.effective_rate + 1e-6

    def test_never_loses_to_identity(self):
        for fam, p in ((1, 0.0), (1, 0.5), (2, 0.125), (3, 0.13)):
            state = make_family(fam, p)
            res = optimize(OptimizationProblem(state, mode=MODE_STRUCTURED))
            assert res.effective_rate >= objective(state, LocalFilter.identity()) - 1e-12

    def test_family3_turns_positive(self):
        for p in family_grid("Family3", 8):
            state = make_family3(float(p))
            assert kdw_of_state(state).kdw < 0
            res = optimize(OptimizationProblem(state, mode=MODE_STRUCTURED))
            assert res.effective_rate > 0

    def test_effective_rate_consistency(self):
        res = optimize(OptimizationProblem(make_family1(0.2), mode=MODE_STRUCTURED))
        assert abs(res.effective_rate - res.kdw * res.success_probability) < 1e-12

    def test_rejects_bad_bounds_and_mode(self):
        state = make_family1(0.2)
        with pytest.raises(ValueError):
            OptimizationProblem(state, bounds=(0.0, 1.0))
        with pytest.raises(ValueError):
            OptimizationProblem(state, mode="annealing")


class TestStarts:
    def test_sixteen_structured_starts(self):
        starts = _structured_starts(PARAM_FLOOR, 1.0)
        assert len(starts) == 16
        assert len(set(starts)) == 16
        assert (1.0,) * 8 in starts
        assert (1.0, PARAM_FLOOR, PARAM_FLOOR, 1.0, 1.0, 1.0, 1.0, 1.0) in starts

    def test_lcg_reproducible_and_in_bounds(self):
        a = _lcg_uniforms(7, 64, PARAM_FLOOR, 1.0)
        b = _lcg_uniforms(7, 64, PARAM_FLOOR, 1.0)
        assert a == b
        assert all(PARAM_FLOOR <= v <= 1.0 for v in a)
        assert _lcg_uniforms(8, 64, PARAM_FLOOR, 1.0) != a


class TestSweep:
    def test_sorted_and_order_independent(self):
        grid = [0.4, 0.1, 0.25]
        records = sweep(1, grid, mode=MODE_STRUCTURED, seed=0)
        assert [r.p for r in records] == sorted(grid)
        again = sweep(1, list(reversed(grid)), mode=MODE_STRUCTURED, seed=0)
        assert records == again

    def test_before_rate_changes_sign_near_crossing(self):
        grid = family_grid("Family1", 50)
        records = sweep(1, [float(p) for p in grid], mode=MODE_STRUCTURED, seed=0)
        flips = [
            (records[i].p, records[i + 1].p)
            for i in range(len(records) - 1)
            if records[i].kdw_before < 0 <= records[i + 1].kdw_before
        ]
        assert len(flips) == 1
        lo, hi = flips[0]
        assert lo <= 0.315 <= hi + 0.005

    def test_family1_success_probability_column(self):
        grid = [0.1, 0.2, 0.3, 0.4, 0.5]
        records = sweep(1, grid, mode=MODE_STRUCTURED, seed=0)
        probs = [r.success_prob for r in records]
        assert all(np.diff(probs) >= -1e-12)
        assert abs(probs[-1] - 1.0) < 1e-9

    def test_family2_always_enhanced(self):
        records = sweep(2, [float(p) for p in family_grid("Family2", 12)], mode=MODE_STRUCTURED, seed=0)
        assert all(r.effective_rate > 0.4 for r in records)
        assert all(r.kdw_after >= 0.99 for r in records)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            sweep(2, [0.1], mode=MODE_STRUCTURED, seed=0)
