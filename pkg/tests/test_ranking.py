'''
Tests for comparators and rank estimators.
'''

import math

import numpy as np
import pytest
from scipy.special import expit

from app.config.exception import ToolkitException
from app.modules.ranking.consts import ComparatorKind, EstimatorKind
from app.modules.ranking.schemas import RankEstimate
from app.modules.ranking.services import Comparator, FixedScores
from app.modules.ranking.services.dependencies import get_rank_estimator


@pytest.fixture
def estimator():
    return get_rank_estimator()


@pytest.fixture
def toy():
    """Positive 0 scored 0.5 against negatives scored 2.0, 0.1, -1.0."""
    return FixedScores(np.array([0.5, 2.0, 0.1, -1.0]))


# -------------------------------------------------------------------------------------------------
# Comparator
# -------------------------------------------------------------------------------------------------

class TestComparator:

    def test_margin(self):
        assert Comparator.value(ComparatorKind.MARGIN, 0.5, 2.0) == pytest.approx(2.5)

    def test_suppressed_margin_is_zero_for_non_violators(self):
        assert Comparator.value(ComparatorKind.SUPPRESSED_MARGIN, 3.0, 0.0) == 0.0

    def test_sigmoid_of_tie(self):
        assert Comparator.value(ComparatorKind.SIGMOID, 1.0, 1.0) == pytest.approx(0.5)

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    def test_bounds(self, kind):
        f_neg = np.linspace(-20, 20, 401)
        values = Comparator.value(kind, 0.0, f_neg)

        assert np.all(values >= 0)
        if kind != ComparatorKind.MARGIN:
            assert np.all(values <= 1)

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    def test_derivative_matches_central_difference(self, kind):
        f_neg = np.array([-2.3, -0.7, 0.4, 1.9])
        h = 1e-6

        numeric = (Comparator.value(kind, 0.5, f_neg + h) - Comparator.value(kind, 0.5, f_neg - h)) / (2 * h)

        np.testing.assert_allclose(Comparator.derivative(kind, 0.5, f_neg), numeric, rtol=1e-5, atol=1e-8)

    def test_derivative_is_zero_at_the_kink(self):
        assert Comparator.derivative(ComparatorKind.MARGIN, 1.0, 0.0) == 0.0


# -------------------------------------------------------------------------------------------------
# Exact and pointwise
# -------------------------------------------------------------------------------------------------

class TestTrueRank:

    def test_counts_higher_negatives(self, estimator):
        assert estimator.true_rank(np.array([0.5, 2.0, 0.1, -1.0]), 0, [0]) == 1

    def test_top_item_has_rank_zero(self, estimator):
        assert estimator.true_rank(np.array([3.0, 2.0, 0.1]), 0, [0]) == 0

    def test_ties_count(self, estimator):
        assert estimator.true_rank(np.array([1.0, 1.0, 0.0]), 0, [0]) == 1

    def test_other_positives_are_not_negatives(self, estimator):
        assert estimator.true_rank(np.array([0.0, 5.0, 1.0]), 0, [0, 1]) == 1

    def test_y_must_be_positive(self, estimator, errors):
        with pytest.raises(ToolkitException) as exc:
            estimator.true_rank(np.array([0.0, 1.0]), 0, [1])

        assert exc.value.error == errors.Common.CONTRACT_VIOLATION

    def test_agrees_with_a_brute_force_count(self, estimator):
        rng = np.random.default_rng(17)
        for _ in range(100):
            n = int(rng.integers(1, 21))
            # one decimal keeps ties frequent
            scores = np.round(rng.normal(size=n), 1)
            positives = rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False).tolist()
            y = positives[int(rng.integers(0, len(positives)))]

            expected = 0
            for item in range(n):
                if item not in positives and scores[item] >= scores[y]:
                    expected += 1

            assert estimator.true_rank(scores, y, positives) == expected


class TestPointwiseRank:

    def test_zero_score(self, estimator):
        assert estimator.pointwise_rank(0.0) == pytest.approx(2.0)

    def test_large_score_approaches_one(self, estimator):
        assert estimator.pointwise_rank(50.0) == pytest.approx(1.0)

    def test_negative_score(self, estimator):
        assert estimator.pointwise_rank(-2.0) == pytest.approx(1 / expit(-2.0))
        assert estimator.pointwise_rank(-2.0) == pytest.approx(8.389, abs=1e-3)


# -------------------------------------------------------------------------------------------------
# Pairwise sampled
# -------------------------------------------------------------------------------------------------

class TestPairwiseSampledRank:

    def test_first_draw_violates(self, estimator):
        scores = np.zeros(1002)
        scores[0] = 0.5
        negatives = np.arange(1, 1002)

        estimate = estimator.pairwise_sampled_rank(FixedScores(scores), 0, 0, negatives, np.random.default_rng(0))

        assert estimate.value == 1000
        assert estimate.trials == 1
        assert not estimate.censored

    def test_no_violator_is_censored(self, estimator):
        scores = np.full(50, -10.0)
        scores[0] = 10.0

        estimate = estimator.pairwise_sampled_rank(
            FixedScores(scores), 0, 0, np.arange(1, 50), np.random.default_rng(0)
        )

        assert estimate.censored
        assert estimate.value == 0.0
        assert estimate.trials == 48

    def test_max_trials_caps_the_search(self, estimator):
        scores = np.full(50, -10.0)
        scores[0] = 10.0

        estimate = estimator.pairwise_sampled_rank(
            FixedScores(scores), 0, 0, np.arange(1, 50), np.random.default_rng(0), max_trials=5
        )

        assert estimate.trials == 5

    def test_first_violation_position(self, estimator):
        scores = [np.array([-5.0, -5.0, -5.0]), np.array([-5.0, 0.0])]
        calls = iter(scores)

        def draw(count):
            chunk = next(calls)
            return np.arange(len(chunk)) + 100, chunk

        assert estimator.first_violation(draw, 0.5, 10) == (5, 101)


class TestExpectedPairwiseEstimate:

    def test_every_draw_violates(self, estimator):
        moments = estimator.expected_pairwise_estimate(11, 11)

        assert moments.mean == 10.0
        assert moments.std == 0.0

    def test_no_violators(self, estimator):
        moments = estimator.expected_pairwise_estimate(10, 0)

        assert moments.mean == 0.0
        assert moments.censor_probability == 1.0

    def test_small_rank_is_inflated(self, estimator):
        moments = estimator.expected_pairwise_estimate(99_999, 10)

        assert moments.mean >= 1.2 * 10

    def test_matches_monte_carlo(self, estimator):
        num_negatives, violators = 200, 20
        scores = np.full(num_negatives + 1, -10.0)
        scores[0] = 0.0
        scores[1:violators + 1] = 5.0
        scorer = FixedScores(scores)
        negatives = np.arange(1, num_negatives + 1)
        rng = np.random.default_rng(1)

        draws = [
            estimator.pairwise_sampled_rank(scorer, 0, 0, negatives, rng).value for _ in range(4000)
        ]
        moments = estimator.expected_pairwise_estimate(num_negatives, violators)

        assert abs(np.mean(draws) - moments.mean) < 4 * moments.std / math.sqrt(len(draws))

    def test_invalid_counts(self, estimator, errors):
        with pytest.raises(ToolkitException) as exc:
            estimator.expected_pairwise_estimate(5, 6)

        assert exc.value.error == errors.Common.CONTRACT_VIOLATION


# -------------------------------------------------------------------------------------------------
# Batch and mini-batch
# -------------------------------------------------------------------------------------------------

class TestBatchRank:

    def test_margin(self, estimator, toy):
        estimate = estimator.batch_rank(ComparatorKind.MARGIN, toy, 0, 0, np.array([1, 2, 3]))

        assert estimate.value == pytest.approx(3.1)
        assert estimate.estimator == EstimatorKind.BATCH

    def test_suppressed_margin(self, estimator, toy):
        estimate = estimator.batch_rank(ComparatorKind.SUPPRESSED_MARGIN, toy, 0, 0, np.array([1, 2, 3]))

        assert estimate.value == pytest.approx(1.1396, abs=1e-4)

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    def test_empty_negatives(self, estimator, toy, kind):
        assert estimator.batch_rank(kind, toy, 0, 0, np.array([], dtype=np.int64)).value == 0.0

    def test_y_among_negatives(self, estimator, toy, errors):
        with pytest.raises(ToolkitException) as exc:
            estimator.batch_rank(ComparatorKind.MARGIN, toy, 0, 0, np.array([0, 1]))

        assert exc.value.error == errors.Common.CONTRACT_VIOLATION

    def test_upper_bounds_true_rank_for_margin(self, estimator):
        rng = np.random.default_rng(2)
        scores = rng.normal(size=300)
        negatives = np.arange(1, 300)

        batch = estimator.batch_rank(ComparatorKind.MARGIN, FixedScores(scores), 0, 0, negatives).value

        assert batch >= estimator.true_rank(scores, 0, [0])

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    def test_monotone_in_scores(self, estimator, kind):
        scores = np.random.default_rng(12).normal(size=40)
        negatives = np.arange(1, 40)

        def estimate(values):
            return estimator.batch_rank(kind, FixedScores(values), 0, 0, negatives).value

        base = estimate(scores)
        for delta in (0.01, 0.3, 2.0):
            raised_y = scores.copy()
            raised_y[0] += delta
            raised_negative = scores.copy()
            raised_negative[7] += delta

            assert estimate(raised_y) <= base
            assert estimate(raised_negative) >= base


class TestMinibatchRank:

    def test_full_sample_equals_batch(self, estimator, toy):
        estimate = estimator.minibatch_rank(
            ComparatorKind.MARGIN, toy, 0, 0, np.arange(4), [0], 1.0, np.random.default_rng(0)
        )

        assert estimate.value == pytest.approx(3.1)
        assert estimate.sample_fraction == 1.0

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    def test_full_sample_is_exactly_batch(self, estimator, kind):
        scores = np.random.default_rng(4).normal(size=500)
        scorer = FixedScores(scores)
        positives = [0, 7, 99]
        negatives = np.setdiff1d(np.arange(500), positives)

        mini = estimator.minibatch_rank(kind, scorer, 0, 7, np.arange(500), positives, 1.0, np.random.default_rng(0))
        batch = estimator.batch_rank(kind, scorer, 0, 7, negatives)

        assert mini.value == batch.value

    def test_only_positives_sampled(self, estimator, toy):
        estimate = estimator.minibatch_rank(
            ComparatorKind.MARGIN, toy, 0, 0, np.arange(4), [0, 1, 2, 3], 0.5, np.random.default_rng(0)
        )

        assert estimate.value == 0.0

    @pytest.mark.parametrize("q", [0.0, 1.5])
    def test_q_out_of_range(self, estimator, toy, errors, q):
        with pytest.raises(ToolkitException) as exc:
            estimator.minibatch_rank(ComparatorKind.MARGIN, toy, 0, 0, np.arange(4), [0], q, np.random.default_rng(0))

        assert exc.value.error == errors.Config.FRACTION_OUT_OF_RANGE

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    def test_unbiased(self, estimator, kind):
        scores = np.random.default_rng(5).normal(size=300)
        scorer = FixedScores(scores)
        universe = np.arange(300)
        rng = np.random.default_rng(6)

        draws = np.array([
            estimator.minibatch_rank(kind, scorer, 0, 0, universe, [0], 0.1, rng).value for _ in range(3000)
        ])
        batch = estimator.batch_rank(kind, scorer, 0, 0, np.arange(1, 300)).value

        assert abs(draws.mean() - batch) < 4 * draws.std() / math.sqrt(len(draws))


# -------------------------------------------------------------------------------------------------
# RankEstimate
# -------------------------------------------------------------------------------------------------

class TestRankEstimate:

    def test_trials_only_for_pairwise(self):
        with pytest.raises(ValueError):
            RankEstimate(value=1.0, estimator=EstimatorKind.BATCH, trials=3)

    def test_value_is_non_negative(self):
        with pytest.raises(ValueError):
            RankEstimate(value=-1.0, estimator=EstimatorKind.EXACT)


# -------------------------------------------------------------------------------------------------
# Desk-scale estimator checks
# -------------------------------------------------------------------------------------------------

@pytest.mark.slow
class TestEstimatorAcceptance:

    def test_pairwise_overestimates_small_ranks(self, estimator):
        num_items = 100_000
        scores = np.full(num_items, -10.0)
        scores[0] = 0.0
        scores[1:11] = 5.0
        scorer = FixedScores(scores)
        negatives = np.arange(1, num_items)
        rng = np.random.default_rng(0)

        draws = [estimator.pairwise_sampled_rank(scorer, 0, 0, negatives, rng).value for _ in range(100_000)]

        assert np.mean(draws) >= 1.2 * 10
        assert estimator.expected_pairwise_estimate(num_items - 1, 10).mean >= 1.2 * 10

    @pytest.mark.parametrize("kind", list(ComparatorKind))
    @pytest.mark.parametrize("q", [0.05, 0.1])
    def test_minibatch_unbiased_on_a_thousand_items(self, estimator, kind, q):
        scores = np.random.default_rng(8).normal(size=1000)
        scorer = FixedScores(scores)
        universe = np.arange(1000)
        rng = np.random.default_rng(9)

        draws = np.array([
            estimator.minibatch_rank(kind, scorer, 0, 0, universe, [0], q, rng).value for _ in range(10_000)
        ])
        batch = estimator.batch_rank(kind, scorer, 0, 0, np.arange(1, 1000)).value

        assert abs(draws.mean() - batch) < 3 * draws.std() / math.sqrt(len(draws))
