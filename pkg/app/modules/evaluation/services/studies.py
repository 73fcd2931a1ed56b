import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np
import pandas as pd
from scipy.stats import norm, pearsonr

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.common.utils import RandomStreams
from app.config.exception import ToolkitException
from app.config.settings import settings
from app.modules.data.schemas import InteractionDataset
from app.modules.evaluation.consts import STUDY_COLUMNS, ScoreProfile
from app.modules.evaluation.contracts import IEstimatorStudies
from app.modules.evaluation.schemas import FidelityResult
from app.modules.model.schemas import FactorModel
from app.modules.ranking.consts import ComparatorKind, EstimatorKind
from app.modules.ranking.contracts import IRankEstimator
from app.modules.ranking.services import FixedScores


class EstimatorStudies(IEstimatorStudies):
    """
    Monte-Carlo variance of the sampled rank estimators and agreement of the
    batch estimate with the exact rank.
    """

    # step profile: violators sit this far above the positive, the rest this far below
    STEP_ABOVE = 0.5
    STEP_BELOW = 2.0

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
        estimator: IRankEstimator,
    ):
        """
        Initialize the study runner.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for study progress.
        :param estimator: Rank estimators under study.
        """

        self._errors = errors
        self._logger = logger
        self._estimator = estimator

    def synthetic_scores(self, num_items: int, true_rank: int, profile: ScoreProfile) -> np.ndarray:
        n = num_items - 1
        if n < 1 or not 0 <= true_rank <= n:
            raise ToolkitException(
                self._errors.Config.INVALID_CONFIG, cause=f"rank {true_rank} not realizable with {num_items} items"
            )

        if profile == ScoreProfile.STEP:
            negatives = np.full(n, -self.STEP_BELOW)
            negatives[:true_rank] = self.STEP_ABOVE
            return np.concatenate(([0.0], negatives))

        negatives = norm.ppf((np.arange(n) + 0.5) / n)[::-1]
        if true_rank == 0:
            f_y = negatives[0] + 0.5
        elif true_rank == n:
            f_y = negatives[-1] - 0.5
        else:
            f_y = 0.5 * (negatives[true_rank - 1] + negatives[true_rank])
        return np.concatenate(([f_y], negatives))

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Relative standard deviation of pairwise and mini-batch estimators."
    )
    def variance_study(
        self,
        num_items: int,
        true_ranks: Sequence[int],
        q_list: Sequence[float],
        resamples: int,
        profile: ScoreProfile = ScoreProfile.GAUSSIAN,
        comparator: ComparatorKind = ComparatorKind.MARGIN,
        seed: int = 0,
        workers: int | None = None,
    ) -> pd.DataFrame:
        if resamples < 1:
            raise ToolkitException(self._errors.Config.INVALID_CONFIG, cause="resamples must be >= 1")
        for q in q_list:
            if not 0.0 < q <= 1.0:
                raise ToolkitException(self._errors.Config.FRACTION_OUT_OF_RANGE, cause=f"q={q}")

        cells = []
        for rank in true_ranks:
            cells.append((EstimatorKind.BATCH, 1.0, rank))
            cells.append((EstimatorKind.PAIRWISE_SAMPLED, None, rank))
            cells.extend((EstimatorKind.MINIBATCH, float(q), rank) for q in q_list)

        vectors = {rank: self.synthetic_scores(num_items, rank, profile) for rank in set(true_ranks)}
        streams = RandomStreams(seed).spawn(len(cells))
        universe = np.arange(num_items)
        negatives = universe[1:]

        def run(cell: tuple, rng: np.random.Generator) -> dict:
            estimator, q, rank = cell
            scorer = FixedScores(vectors[rank])
            if estimator == EstimatorKind.BATCH:
                values = np.array([self._estimator.batch_rank(comparator, scorer, 0, 0, negatives).value])
            elif estimator == EstimatorKind.PAIRWISE_SAMPLED:
                values = np.array([
                    self._estimator.pairwise_sampled_rank(scorer, 0, 0, negatives, rng).value
                    for _ in range(resamples)
                ])
            else:
                values = np.array([
                    self._estimator.minibatch_rank(comparator, scorer, 0, 0, universe, [0], q, rng).value
                    for _ in range(resamples)
                ])
            return self._summary(str(estimator), q, rank, values)

        workers = min(workers or settings.runtime.WORKERS, len(cells))
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            rows = list(pool.map(run, cells, streams))

        self._logger.info(f"Variance study: N={num_items} ranks={list(true_ranks)} q={list(q_list)}")
        return pd.DataFrame(rows, columns=list(STUDY_COLUMNS))

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Exact rank against batch estimate for sampled users."
    )
    def rank_fidelity_study(
        self,
        model: FactorModel,
        ds: InteractionDataset,
        sample_users: int,
        comparator: ComparatorKind = ComparatorKind.MARGIN,
        num_bins: int = 10,
        seed: int = 0,
    ) -> FidelityResult:
        candidates = np.flatnonzero(np.diff(ds.positives.indptr) > 0)
        rng = np.random.default_rng(seed)
        users = np.sort(rng.choice(candidates, size=min(sample_users, len(candidates)), replace=False))
        items = np.arange(model.num_items)

        records = []
        for user in users.tolist():
            scores = model.score_block([user], items)[0]
            scorer = FixedScores(scores)
            positives = ds.user_positives(user)
            negatives = np.setdiff1d(items, positives, assume_unique=True)
            for y in positives.tolist():
                records.append({
                    "user": user,
                    "item": y,
                    "true_rank": self._estimator.true_rank(scores, y, positives),
                    "estimate": self._estimator.batch_rank(comparator, scorer, 0, y, negatives).value,
                })

        pairs = pd.DataFrame(records, columns=["user", "item", "true_rank", "estimate"])
        return FidelityResult(
            pairs=pairs,
            binned=self._binned(pairs, comparator, num_bins),
            pearson=self._pearson(pairs),
        )

    @staticmethod
    def _summary(estimator: str, q: float | None, rank: int, values: np.ndarray) -> dict:
        mean = float(np.mean(values))
        std = float(np.std(values))
        if mean > 0:
            rel_std = std / mean
        else:
            rel_std = 0.0 if std == 0 else float("inf")
        return {"estimator": estimator, "q": q, "true_rank": rank, "mean": mean, "std": std, "rel_std": rel_std}

    def _binned(self, pairs: pd.DataFrame, comparator: ComparatorKind, num_bins: int) -> pd.DataFrame:
        if pairs.empty:
            return pd.DataFrame(columns=list(STUDY_COLUMNS))

        edges = np.linspace(0, pairs["true_rank"].max() + 1, num_bins + 1)
        bins = pd.cut(pairs["true_rank"], bins=edges, right=False)
        rows = []
        for _, group in pairs.groupby(bins, observed=True):
            summary = self._summary(
                f"{EstimatorKind.BATCH}_{comparator}", 1.0, 0, group["estimate"].to_numpy(dtype=np.float64)
            )
            summary["true_rank"] = float(group["true_rank"].mean())
            rows.append(summary)
        return pd.DataFrame(rows, columns=list(STUDY_COLUMNS))

    @staticmethod
    def _pearson(pairs: pd.DataFrame) -> float:
        if len(pairs) < 2 or pairs["true_rank"].nunique() < 2 or pairs["estimate"].nunique() < 2:
            return float("nan")
        return float(pearsonr(pairs["true_rank"], pairs["estimate"])[0])
