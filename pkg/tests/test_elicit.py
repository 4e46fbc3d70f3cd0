"""Clustering, membership fitting, and end-to-end variable elicitation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lingmap import (
    DatasetError,
    DefinitionError,
    ElicitConfig,
    ElicitationError,
    Gauss2,
    Interval,
    TrainingSet,
    elicit_variable,
    fcm,
    fit_gauss2,
    gauss2_sum,
    subtractive_clusters,
)

sample_lists = st.lists(
    st.floats(min_value=-1e4, max_value=1e4, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=40,
)


class TestTrainingSet:
    def test_basic(self):
        ts = TrainingSet(np.array([1.0, 2.0]), labels=("a", "b"))
        assert len(ts) == 2
        assert ts.labels == ("a", "b")

    def test_rejects_empty(self):
        with pytest.raises(DatasetError):
            TrainingSet(np.array([]))

    def test_rejects_non_finite(self):
        with pytest.raises(DatasetError):
            TrainingSet(np.array([1.0, float("nan")]))

    def test_rejects_label_mismatch(self):
        with pytest.raises(DatasetError):
            TrainingSet(np.array([1.0, 2.0]), labels=("a",))


class TestSubtractiveClustering:
    def test_identical_data_gives_one_center(self):
        centers = subtractive_clusters(np.full(25, 7.5))
        assert centers.tolist() == [7.5]

    def test_two_blobs_give_two_centers(self, two_blobs):
        centers = subtractive_clusters(two_blobs)
        assert len(centers) == 2
        assert min(centers) == pytest.approx(10.0, abs=2.0)
        assert max(centers) == pytest.approx(50.0, abs=3.0)

    def test_fixture_dataset_gives_two_centers(self, individualism_data):
        centers = subtractive_clusters(individualism_data.values)
        assert len(centers) == 2

    def test_centers_are_data_points(self, two_blobs):
        centers = subtractive_clusters(two_blobs)
        for c in centers:
            assert np.any(two_blobs == c)

    def test_symmetric_pair_breaks_tie_by_value(self):
        # both points have identical potential; the result must not depend
        # on their order in the array
        a = subtractive_clusters(np.array([0.0, 1.0]))
        b = subtractive_clusters(np.array([1.0, 0.0]))
        assert a.tolist() == b.tolist()

    @given(sample_lists, st.randoms(use_true_random=False))
    @settings(max_examples=50, deadline=None)
    def test_permutation_invariant(self, values, rnd):
        xs = np.array(values)
        shuffled = xs.copy()
        rnd.shuffle(shuffled)
        a = np.sort(subtractive_clusters(xs))
        b = np.sort(subtractive_clusters(shuffled))
        assert a.tolist() == b.tolist()

    def test_radius_controls_granularity(self, two_blobs):
        coarse = subtractive_clusters(two_blobs, ElicitConfig(radius=1.5))
        fine = subtractive_clusters(two_blobs, ElicitConfig(radius=0.12))
        assert len(coarse) <= len(fine)


class TestFcm:
    def test_memberships_sum_to_one(self, two_blobs):
        model = fcm(two_blobs, k=2)
        np.testing.assert_allclose(model.memberships.sum(axis=1), 1.0, atol=1e-12)

    def test_centers_sorted_with_matching_columns(self, two_blobs):
        model = fcm(two_blobs, k=2)
        assert model.centers[0] < model.centers[1]
        low_points = two_blobs < 30.0
        # points in the low blob must prefer the low center's column
        assert np.all(model.memberships[low_points, 0] > 0.5)
        assert np.all(model.memberships[~low_points, 1] > 0.5)

    def test_objective_nonincreasing(self, two_blobs):
        model = fcm(two_blobs, k=2)
        path = np.array(model.objective_path)
        assert np.all(np.diff(path) <= 1e-9)

    def test_converged_flag(self, two_blobs):
        assert fcm(two_blobs, k=2).converged
        starved = fcm(two_blobs, k=2, config=ElicitConfig(max_iter=1))
        assert not starved.converged
        assert starved.iterations == 1

    def test_coincident_point_gets_full_membership(self):
        xs = np.array([0.0, 0.0, 0.0, 10.0, 10.0, 10.0])
        model = fcm(xs, k=2)
        # centers land exactly on the two values; memberships must be crisp
        np.testing.assert_allclose(model.centers, [0.0, 10.0], atol=1e-9)
        np.testing.assert_allclose(model.memberships[0], [1.0, 0.0], atol=1e-9)

    def test_k_must_fit_data(self):
        with pytest.raises(DefinitionError):
            fcm(np.array([1.0, 2.0]), k=3)
        with pytest.raises(DefinitionError):
            fcm(np.array([1.0, 2.0]), k=0)

    def test_init_seeds_are_used(self, two_blobs):
        seeded = fcm(two_blobs, k=2, init=np.array([10.0, 50.0]))
        default = fcm(two_blobs, k=2)
        np.testing.assert_allclose(seeded.centers, default.centers, atol=1e-4)

    @given(sample_lists)
    @settings(max_examples=50, deadline=None)
    def test_row_sums_property(self, values):
        xs = np.array(values)
        k = min(2, np.unique(xs).size)
        model = fcm(xs, k=k)
        np.testing.assert_allclose(model.memberships.sum(axis=1), 1.0, atol=1e-12)


def reference_fcm(xs, k, init, m=2.0, tol=1e-6, max_iter=500):
    """Plain-loop fuzzy c-means used as an independent oracle."""
    centers = [float(c) for c in init]
    objective = []
    for _ in range(max_iter):
        u = []
        for x in xs:
            d2 = [(x - c) ** 2 for c in centers]
            if any(d == 0.0 for d in d2):
                hits = [1.0 if d == 0.0 else 0.0 for d in d2]
                u.append([h / sum(hits) for h in hits])
            else:
                inv = [d ** (-1.0 / (m - 1.0)) for d in d2]
                u.append([i / sum(inv) for i in inv])
        objective.append(
            sum(
                u[i][j] ** m * (xs[i] - centers[j]) ** 2
                for i in range(len(xs))
                for j in range(k)
            )
        )
        new_centers = []
        for j in range(k):
            num = sum(u[i][j] ** m * xs[i] for i in range(len(xs)))
            den = sum(u[i][j] ** m for i in range(len(xs)))
            new_centers.append(num / den)
        shift = max(abs(a - b) for a, b in zip(new_centers, centers))
        centers = new_centers
        if shift < tol:
            break
    final_u = []
    for x in xs:
        d2 = [(x - c) ** 2 for c in centers]
        if any(d == 0.0 for d in d2):
            hits = [1.0 if d == 0.0 else 0.0 for d in d2]
            final_u.append([h / sum(hits) for h in hits])
        else:
            inv = [d ** (-1.0 / (m - 1.0)) for d in d2]
            final_u.append([i / sum(inv) for i in inv])
    return centers, final_u, objective


class TestFcmAgainstReference:
    def test_matches_loop_oracle(self, two_blobs):
        init = np.quantile(two_blobs, [0.25, 0.75])
        model = fcm(two_blobs, k=2, init=init)
        ref_centers, ref_u, ref_obj = reference_fcm(list(two_blobs), 2, init)
        order = np.argsort(ref_centers)
        np.testing.assert_allclose(model.centers, np.array(ref_centers)[order], atol=1e-6)
        np.testing.assert_allclose(
            model.memberships, np.array(ref_u)[:, order], atol=1e-6
        )
        np.testing.assert_allclose(model.objective_path, ref_obj, rtol=1e-9)


class TestFitGauss2:
    def make_data(self, params, n=60, lo=-5.0, hi=25.0):
        xs = np.linspace(lo, hi, n)
        ys = gauss2_sum(xs, *params)
        return xs, ys

    def test_recovers_exact_parameters(self):
        true = (0.6, 4.0, 2.5, 0.4, 14.0, 3.5)
        xs, ys = self.make_data(true)
        init = Gauss2(0.5, 5.0, 3.0, 0.5, 13.0, 3.0)
        fit = fit_gauss2(xs, ys, init)
        assert fit.converged
        got = fit.params
        for name, want in zip(("alpha1", "beta1", "gamma1", "alpha2", "beta2", "gamma2"), true):
            assert getattr(got, name) == pytest.approx(want, rel=1e-6)
        assert fit.residual < 1e-8

    def test_never_worse_than_init(self):
        rng = np.random.default_rng(7)
        xs = np.linspace(0, 10, 40)
        ys = np.clip(gauss2_sum(xs, 0.7, 3, 1.5, 0.5, 7, 2.0) + rng.normal(0, 0.05, 40), 0, 1)
        init = Gauss2(0.6, 3.5, 1.0, 0.6, 6.5, 1.5)
        init_rms = math.sqrt(float(np.mean((gauss2_sum(xs, 0.6, 3.5, 1.0, 0.6, 6.5, 1.5) - ys) ** 2)))
        fit = fit_gauss2(xs, ys, init)
        assert fit.residual <= init_rms + 1e-15

    def test_widths_stay_positive(self):
        xs = np.linspace(0, 1, 30)
        ys = np.full(30, 0.5)
        fit = fit_gauss2(xs, ys, Gauss2(0.25, 0.2, 0.3, 0.25, 0.8, 0.3))
        assert fit.params.gamma1 > 0 and fit.params.gamma2 > 0

    def test_needs_six_points(self):
        with pytest.raises(DatasetError) as err:
            fit_gauss2([0, 1, 2, 3, 4], [0, 1, 0, 1, 0], Gauss2(0.5, 1, 1, 0.5, 3, 1))
        assert "at least 6" in str(err.value)

    def test_length_mismatch(self):
        with pytest.raises(DatasetError):
            fit_gauss2([0, 1, 2, 3, 4, 5], [0, 1], Gauss2(0.5, 1, 1, 0.5, 3, 1))

    def test_perfect_init_converges_immediately(self):
        true = (0.6, 4.0, 2.5, 0.4, 14.0, 3.5)
        xs, ys = self.make_data(true)
        fit = fit_gauss2(xs, ys, Gauss2(*true))
        assert fit.converged
        assert fit.iterations == 0


class TestElicitVariable:
    def test_on_fixture_matches_frozen_terms(self, individualism_data, case1_catalog):
        result = elicit_variable(
            individualism_data, "individualism", Interval(0.0, 100.0), kind="ordinal"
        )
        assert list(result.variable.terms) == ["LC1", "LC2"]
        frozen = case1_catalog.variables["individualism"]
        for term in ("LC1", "LC2"):
            got = result.variable.terms[term]
            want = frozen.terms[term]
            for f in ("alpha1", "beta1", "gamma1", "alpha2", "beta2", "gamma2"):
                assert getattr(got, f) == pytest.approx(getattr(want, f), rel=1e-9)

    def test_quality_of_fits(self, individualism_data):
        result = elicit_variable(individualism_data, "x", Interval(0.0, 100.0))
        for fit in result.fits:
            assert fit.converged
            assert fit.residual <= 0.15

    def test_terms_named_in_ascending_center_order(self, two_blobs):
        result = elicit_variable(TrainingSet(two_blobs), "x", Interval(0.0, 60.0))
        lc1, lc2 = result.variable.terms["LC1"], result.variable.terms["LC2"]
        assert lc1(10.0) > lc1(50.0)
        assert lc2(50.0) > lc2(10.0)

    def test_dataset_too_small(self):
        with pytest.raises(ElicitationError) as err:
            elicit_variable(TrainingSet(np.array([42.0])), "x", Interval(0.0, 100.0))
        assert "dataset too small" in str(err.value)

    def test_data_outside_domain_rejected(self, two_blobs):
        with pytest.raises(ElicitationError) as err:
            elicit_variable(TrainingSet(two_blobs), "x", Interval(0.0, 20.0))
        assert "outside the domain" in str(err.value)

    def test_residual_ceiling_enforced(self, individualism_data):
        tight = ElicitConfig(residual_ceiling=1e-6)
        with pytest.raises(ElicitationError) as err:
            elicit_variable(individualism_data, "x", Interval(0.0, 100.0), config=tight)
        assert "ceiling" in str(err.value)

    def test_deterministic(self, individualism_data):
        a = elicit_variable(individualism_data, "x", Interval(0.0, 100.0))
        b = elicit_variable(individualism_data, "x", Interval(0.0, 100.0))
        assert a.variable == b.variable


class TestElicitConfig:
    def test_defaults(self):
        cfg = ElicitConfig()
        assert cfg.radius == 0.5
        assert cfg.squash_factor == 1.25
        assert cfg.accept_ratio == 0.5
        assert cfg.reject_ratio == 0.15
        assert cfg.fuzzifier == 2.0
        assert cfg.tol == 1e-6
        assert cfg.max_iter == 500

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"radius": 0.0},
            {"squash_factor": 0.8},
            {"accept_ratio": 0.1, "reject_ratio": 0.5},
            {"fuzzifier": 1.0},
            {"max_iter": 0},
            {"residual_ceiling": 0.0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DefinitionError):
            ElicitConfig(**kwargs)
