'''
Tests for ranking metrics, offline evaluation, report writing and the estimator studies.
'''

import json

import numpy as np
import pandas as pd
import pytest

from app.config.exception import ToolkitException
from app.modules.evaluation.consts import STUDY_COLUMNS, ScoreProfile
from app.modules.evaluation.schemas import CutoffMetrics, EvalReport
from app.modules.evaluation.services.dependencies import (
    get_estimator_studies,
    get_evaluator,
    get_ranking_metrics,
    get_report_writer,
)
from app.modules.model.schemas import ModelConfig
from app.modules.model.services.dependencies import get_model_service
from app.modules.ranking.consts import ComparatorKind
from app.modules.ranking.services import FixedScores
from app.modules.ranking.services.dependencies import get_rank_estimator
from tests.conftest import make_dataset


def indicator_model(train_ds, relevant_pairs, height: float = 1.0):
    """Model scoring `height` for the given (user, item) pairs and 0 elsewhere."""
    model = get_model_service().init_model(ModelConfig(dim=train_ds.num_users, init_scale=0.0), train_ds)
    model.user_embeddings[:train_ds.num_users] = np.eye(train_ds.num_users)
    for user, item in relevant_pairs:
        model.item_embeddings[item, user] = height
    return model


# -------------------------------------------------------------------------------------------------
# Metrics
# -------------------------------------------------------------------------------------------------

class TestTopK:

    @pytest.fixture
    def metrics(self):
        return get_ranking_metrics()

    @pytest.fixture
    def scorer(self):
        return FixedScores(np.array([0.1, 0.9, 0.5]))

    def test_highest_first(self, metrics, scorer):
        assert metrics.topk(scorer, 0, 2) == [1, 2]

    def test_exclusion(self, metrics, scorer):
        assert metrics.topk(scorer, 0, 2, exclude={1}) == [2, 0]

    def test_all_excluded(self, metrics, scorer):
        assert metrics.topk(scorer, 0, 2, exclude={0, 1, 2}) == []

    def test_short_list_when_k_exceeds_items(self, metrics, scorer):
        assert metrics.topk(scorer, 0, 10) == [1, 2, 0]

    def test_ties_by_ascending_index(self, metrics):
        assert metrics.topk(FixedScores(np.array([0.3, 0.7, 0.7, 0.3])), 0, 4) == [1, 2, 0, 3]

    def test_k_must_be_positive(self, metrics, scorer, errors):
        with pytest.raises(ToolkitException) as exc:
            metrics.topk(scorer, 0, 0)

        assert exc.value.error == errors.Common.CONTRACT_VIOLATION


class TestCutoffMetrics:

    @pytest.fixture
    def metrics(self):
        return get_ranking_metrics()

    def test_ideal_single_item(self, metrics):
        ranked = [7, 1, 2, 3, 4]

        assert metrics.precision_at_k(ranked, {7}, 5) == pytest.approx(0.2)
        assert metrics.recall_at_k(ranked, {7}, 5) == pytest.approx(1.0)
        assert metrics.ndcg_at_k(ranked, {7}, 5) == pytest.approx(1.0)

    def test_second_position(self, metrics):
        assert metrics.ndcg_at_k([3, 7], {7}, 2) == pytest.approx(1 / np.log2(3))
        assert metrics.ndcg_at_k([3, 7], {7}, 2) == pytest.approx(0.6309, abs=1e-4)

    def test_no_hits(self, metrics):
        ranked = [0, 1, 2]

        assert metrics.precision_at_k(ranked, {9}, 3) == 0.0
        assert metrics.recall_at_k(ranked, {9}, 3) == 0.0
        assert metrics.ndcg_at_k(ranked, {9}, 3) == 0.0

    def test_perfect_list_for_many_relevant(self, metrics):
        assert metrics.ndcg_at_k([4, 2, 9], {2, 4, 9, 11}, 3) == pytest.approx(1.0)

    def test_empty_relevant_set_is_rejected(self, metrics, errors):
        with pytest.raises(ToolkitException) as exc:
            metrics.recall_at_k([0, 1], set(), 2)

        assert exc.value.error == errors.Common.CONTRACT_VIOLATION


# -------------------------------------------------------------------------------------------------
# Evaluator
# -------------------------------------------------------------------------------------------------

class TestEvaluator:

    @pytest.fixture
    def split(self):
        train = make_dataset([(0, 0), (1, 1), (2, 2), (3, 5)], num_users=4, num_items=8)
        # user 3 has no test positives and is not evaluated
        test = make_dataset([(0, 3), (0, 4), (1, 5), (2, 6), (2, 7), (2, 1)], num_users=4, num_items=8)
        return train, test

    def test_oracle_model(self, split):
        train, test = split
        pairs = list(zip(test.user_ids.tolist(), test.item_ids.tolist()))
        model = indicator_model(train, pairs)

        report = get_evaluator().evaluate(model, train, test, cutoffs=[1, 5])

        assert report.users_evaluated == 3
        assert report.at(5).recall == pytest.approx(1.0)
        assert report.at(5).ndcg == pytest.approx(1.0)
        assert report.at(1).ndcg == pytest.approx(1.0)
        # |relevant| = 2, 1, 3
        assert report.at(5).precision == pytest.approx((2 / 5 + 1 / 5 + 3 / 5) / 3)
        assert report.at(1).precision == pytest.approx(1.0)

    def test_remove_historical_toggle(self):
        train = make_dataset([(0, 0)], num_users=1, num_items=5)
        test = make_dataset([(0, 1)], num_users=1, num_items=5)
        model = get_model_service().init_model(ModelConfig(dim=2, init_scale=0.0), train)
        model.item_bias[:2] = [2.0, 1.0]

        removed = get_evaluator().evaluate(model, train, test, cutoffs=[1, 5], remove_historical=True)
        kept = get_evaluator().evaluate(model, train, test, cutoffs=[1, 5], remove_historical=False)

        assert removed.at(1).ndcg == pytest.approx(1.0)
        assert kept.at(1).ndcg == 0.0
        assert kept.at(5).ndcg == pytest.approx(1 / np.log2(3))
        assert removed.remove_historical and not kept.remove_historical

    def test_worker_count_does_not_change_report(self, planted_split):
        model = get_model_service().init_model(ModelConfig(dim=4, seed=2), planted_split.train)

        one = get_evaluator().evaluate(model, planted_split.train, planted_split.test, workers=1)
        many = get_evaluator().evaluate(model, planted_split.train, planted_split.test, workers=4)

        assert one.model_dump() == many.model_dump()

    def test_report_is_the_plain_per_user_mean(self, planted_split):
        train, test = planted_split.train, planted_split.test
        model = get_model_service().init_model(ModelConfig(dim=4, seed=5), train)
        metrics = get_ranking_metrics()

        report = get_evaluator().evaluate(model, train, test, cutoffs=[5, 30])

        users = np.flatnonzero(np.diff(test.positives.indptr) > 0)
        scores = model.score_block(users, np.arange(model.num_items))
        for k in (5, 30):
            per_user = []
            for row, user in enumerate(users):
                ranked = metrics.topk_from_scores(scores[row], k, train.user_positives(user)).tolist()
                relevant = test.user_positives(user).tolist()
                per_user.append((
                    metrics.precision_at_k(ranked, relevant, k),
                    metrics.recall_at_k(ranked, relevant, k),
                    metrics.ndcg_at_k(ranked, relevant, k),
                ))
            precision, recall, ndcg = np.mean(per_user, axis=0)
            assert report.at(k).precision == pytest.approx(precision, rel=1e-12)
            assert report.at(k).recall == pytest.approx(recall, rel=1e-12)
            assert report.at(k).ndcg == pytest.approx(ndcg, rel=1e-12)

    def test_perfect_report_is_exactly_one(self, split):
        train, test = split
        pairs = list(zip(test.user_ids.tolist(), test.item_ids.tolist()))

        report = get_evaluator().evaluate(indicator_model(train, pairs), train, test, cutoffs=[1])

        assert report.at(1).precision == 1.0
        assert report.at(1).ndcg == 1.0

    def test_vocabulary_mismatch(self, split, errors):
        train, _ = split
        other = make_dataset([(0, 0)], num_users=1, num_items=3)

        with pytest.raises(ToolkitException) as exc:
            get_evaluator().evaluate(get_model_service().popularity_model(train), train, other)

        assert exc.value.error == errors.Data.VOCABULARY_MISMATCH
        assert exc.value.exit_code == 3


class TestReportWriter:

    @pytest.fixture
    def report(self):
        return EvalReport(
            cutoffs=[
                CutoffMetrics(k=5, precision=0.2, recall=0.5, ndcg=0.4),
                CutoffMetrics(k=30, precision=0.05, recall=0.9, ndcg=0.6),
            ],
            users_evaluated=10,
            remove_historical=True,
            config_fingerprint="abc",
            run_id="0123456789abcdef",
        )

    def test_json_and_csv(self, report, tmp_path):
        paths = get_report_writer().write_eval_report(report, tmp_path / "eval")

        payload = json.loads(paths["json"].read_text(encoding="utf-8"))
        lines = paths["csv"].read_text(encoding="utf-8").splitlines()

        assert payload["users_evaluated"] == 10
        assert [c["k"] for c in payload["cutoffs"]] == [5, 30]
        assert lines[0] == "# run_id=0123456789abcdef"
        assert lines[1] == "k,precision,recall,ndcg"
        assert lines[2].startswith("5,0.2,0.5,0.4")

    def test_table_without_run_id(self, tmp_path):
        frame = pd.DataFrame([{"estimator": "batch", "q": 1.0, "true_rank": 3, "mean": 3.0, "std": 0.0, "rel_std": 0.0}])

        path = get_report_writer().write_table(frame, tmp_path / "study.csv")

        assert path.read_text(encoding="utf-8").splitlines()[0] == ",".join(STUDY_COLUMNS)


# -------------------------------------------------------------------------------------------------
# Studies
# -------------------------------------------------------------------------------------------------

class TestSyntheticScores:

    @pytest.mark.parametrize("profile", list(ScoreProfile))
    @pytest.mark.parametrize("rank", [0, 1, 7, 19])
    def test_realizes_true_rank(self, profile, rank):
        scores = get_estimator_studies().synthetic_scores(20, rank, profile)

        assert len(scores) == 20
        assert get_rank_estimator().true_rank(scores, 0, [0]) == rank

    def test_step_profile_has_exact_violators(self):
        scores = get_estimator_studies().synthetic_scores(50, 6, ScoreProfile.STEP)

        assert int(np.sum(1.0 + scores[1:] > scores[0])) == 6

    def test_unrealizable_rank(self, errors):
        with pytest.raises(ToolkitException) as exc:
            get_estimator_studies().synthetic_scores(10, 10, ScoreProfile.GAUSSIAN)

        assert exc.value.error == errors.Config.INVALID_CONFIG


class TestVarianceStudy:

    def test_table_layout_and_exact_cells(self):
        frame = get_estimator_studies().variance_study(200, [5, 50], [0.1, 1.0], resamples=40, seed=3, workers=2)

        assert list(frame.columns) == list(STUDY_COLUMNS)
        assert len(frame) == 2 * 4
        exact = frame[(frame["estimator"] == "batch") | (frame["q"] == 1.0)]
        assert len(exact) == 4
        np.testing.assert_allclose(exact["rel_std"].to_numpy(), 0.0, atol=1e-12)

    def test_deterministic_for_a_seed(self):
        studies = get_estimator_studies()

        first = studies.variance_study(100, [10], [0.2], resamples=30, seed=9, workers=1)
        second = studies.variance_study(100, [10], [0.2], resamples=30, seed=9, workers=3)

        pd.testing.assert_frame_equal(first, second)

    def test_pairwise_matches_geometric_distribution(self):
        num_items, rank, resamples = 21, 4, 4000
        n = num_items - 1
        p = rank / n
        trials = np.arange(1, n)
        probabilities = p * (1 - p) ** (trials - 1)
        values = (n - 1) // trials
        # censored draws contribute 0
        mean = float(np.sum(probabilities * values))
        std = float(np.sqrt(np.sum(probabilities * values ** 2) - mean ** 2))

        frame = get_estimator_studies().variance_study(
            num_items, [rank], [0.5], resamples=resamples, profile=ScoreProfile.STEP, seed=4
        )
        pairwise = frame[frame["estimator"] == "pairwise"].iloc[0]

        assert abs(pairwise["mean"] - mean) < 4 * std / np.sqrt(resamples)
        assert pairwise["std"] == pytest.approx(std, rel=0.1)

    def test_fraction_out_of_range(self, errors):
        with pytest.raises(ToolkitException) as exc:
            get_estimator_studies().variance_study(100, [10], [0.0], resamples=5)

        assert exc.value.error == errors.Config.FRACTION_OUT_OF_RANGE


class TestRankFidelityStudy:

    def test_separated_model_estimates_zero(self):
        pairs = [(0, 0), (0, 1), (1, 2), (2, 3), (2, 4)]
        ds = make_dataset(pairs, num_users=3, num_items=10)
        model = indicator_model(ds, pairs, height=5.0)

        result = get_estimator_studies().rank_fidelity_study(model, ds, sample_users=3)

        assert len(result.pairs) == 5
        assert (result.pairs["true_rank"] == 0).all()
        np.testing.assert_array_equal(result.pairs["estimate"].to_numpy(), 0.0)
        assert np.isnan(result.pearson)

    def test_pairs_and_bins(self, planted_dataset):
        model = get_model_service().init_model(ModelConfig(dim=8, init_scale=0.5, seed=1), planted_dataset)

        result = get_estimator_studies().rank_fidelity_study(
            model, planted_dataset, sample_users=10, comparator=ComparatorKind.MARGIN, num_bins=5, seed=2
        )

        assert result.pairs["user"].nunique() == 10
        assert len(result.pairs) == 10 * 10
        assert list(result.binned.columns) == list(STUDY_COLUMNS)
        assert 1 <= len(result.binned) <= 5
        assert result.pearson > 0


# -------------------------------------------------------------------------------------------------
# Acceptance
# -------------------------------------------------------------------------------------------------

@pytest.mark.slow
class TestStudyAcceptance:

    def test_minibatch_variance_is_far_below_pairwise(self):
        frame = get_estimator_studies().variance_study(
            100_000, [10, 100, 1000, 10_000], [0.05, 0.1], resamples=10_000, seed=0
        )
        pairwise = frame[frame["estimator"] == "pairwise"].set_index("true_rank")["rel_std"]
        minibatch = frame[frame["estimator"] == "minibatch"]

        at_tenth = minibatch[minibatch["q"] == 0.1].set_index("true_rank")["rel_std"]
        for rank in (10, 100, 1000):
            assert 10 * at_tenth[rank] <= pairwise[rank]
        assert (minibatch[minibatch["true_rank"] >= 100]["rel_std"] < 0.2).all()
        assert pairwise[10] >= 1.0 and pairwise[100] >= 1.0
