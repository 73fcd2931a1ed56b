import logging
import math
from typing import Callable, Iterable

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.contracts import IScorer
from app.config.exception import ToolkitException
from app.modules.ranking.consts import FIRST_DRAW_CHUNK, MAX_DRAW_CHUNK, ComparatorKind, EstimatorKind
from app.modules.ranking.contracts import IRankEstimator
from app.modules.ranking.schemas import PairwiseMoments, RankEstimate
from app.modules.ranking.services.comparators import Comparator


class RankEstimator(IRankEstimator):
    """
    Exact, pointwise, pairwise-sampled, batch and mini-batch rank estimators.

    Single-user sums use `math.fsum`, so a comparator sum does not depend on
    the order its terms were gathered in.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        """
        Initialize the estimator service.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for estimator diagnostics.
        """

        self._errors = errors
        self._logger = logger

    def true_rank(self, scores: np.ndarray, y: int, positives: Iterable[int]) -> int:
        scores = np.asarray(scores, dtype=np.float64)
        positives = np.fromiter(positives, dtype=np.int64)
        if y not in positives:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause=f"item {y} is not a positive")

        negative = np.ones(len(scores), dtype=bool)
        negative[positives] = False
        return int(np.count_nonzero(scores[negative] >= scores[y]))

    def pointwise_rank(self, score: float) -> float:
        # 1 / sigma(s) == 1 + exp(-s)
        return float(1.0 + np.exp(-score))

    def pairwise_sampled_rank(
        self,
        scorer: IScorer,
        user: int,
        y: int,
        negatives: np.ndarray,
        rng: np.random.Generator,
        max_trials: int | None = None,
    ) -> RankEstimate:
        negatives = np.asarray(negatives, dtype=np.int64)
        n = len(negatives)
        if n == 0:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause="empty negative set")
        max_trials = max(1, n - 1) if max_trials is None else max_trials
        if max_trials < 1:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause="max_trials must be >= 1")

        f_y = scorer.score_block([user], [y])[0, 0]

        def draw(count: int) -> tuple[np.ndarray, np.ndarray]:
            items = negatives[rng.integers(0, n, size=count)]
            return items, scorer.score_block([user], items)[0]

        trial, _ = self.first_violation(draw, f_y, max_trials)
        if trial is None:
            return RankEstimate(
                value=0.0, estimator=EstimatorKind.PAIRWISE_SAMPLED, trials=max_trials, censored=True
            )
        return RankEstimate(
            value=float((n - 1) // trial), estimator=EstimatorKind.PAIRWISE_SAMPLED, trials=trial
        )

    def batch_rank(
        self,
        kind: ComparatorKind,
        scorer: IScorer,
        user: int,
        y: int,
        negatives: np.ndarray,
    ) -> RankEstimate:
        negatives = np.asarray(negatives, dtype=np.int64)
        if np.any(negatives == y):
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause=f"item {y} listed as a negative")
        if len(negatives) == 0:
            return RankEstimate(value=0.0, estimator=EstimatorKind.BATCH)

        scores = scorer.score_block([user], np.concatenate(([y], negatives)))[0]
        terms = Comparator.value(kind, scores[0], scores[1:])
        return RankEstimate(value=math.fsum(terms.tolist()), estimator=EstimatorKind.BATCH)

    def minibatch_rank(
        self,
        kind: ComparatorKind,
        scorer: IScorer,
        user: int,
        y: int,
        item_universe: np.ndarray,
        positives: Iterable[int],
        q: float,
        rng: np.random.Generator,
    ) -> RankEstimate:
        if not 0.0 < q <= 1.0:
            raise ToolkitException(self._errors.Config.FRACTION_OUT_OF_RANGE, cause=f"q={q}")

        item_universe = np.asarray(item_universe, dtype=np.int64)
        size = math.ceil(round(q * len(item_universe), 9))
        sample = np.sort(rng.choice(item_universe, size=size, replace=False))

        excluded = np.fromiter(positives, dtype=np.int64)
        sampled_negatives = sample[~np.isin(sample, excluded) & (sample != y)]

        value = 0.0
        if len(sampled_negatives):
            scores = scorer.score_block([user], np.concatenate(([y], sampled_negatives)))[0]
            terms = Comparator.value(kind, scores[0], scores[1:])
            value = (len(item_universe) / size) * math.fsum(terms.tolist())
        return RankEstimate(value=value, estimator=EstimatorKind.MINIBATCH, sample_fraction=q)

    def expected_pairwise_estimate(
        self,
        num_negatives: int,
        num_violators: int,
        max_trials: int | None = None,
    ) -> PairwiseMoments:
        if not 0 <= num_violators <= num_negatives or num_negatives < 1:
            raise ToolkitException(
                self._errors.Common.CONTRACT_VIOLATION,
                cause=f"{num_violators} violators among {num_negatives} negatives",
            )
        max_trials = max(1, num_negatives - 1) if max_trials is None else max_trials
        if num_violators == 0:
            return PairwiseMoments(mean=0.0, std=0.0, censor_probability=1.0)

        p = num_violators / num_negatives
        trials = np.arange(1, max_trials + 1, dtype=np.float64)
        if p == 1.0:
            pmf = (trials == 1).astype(np.float64)
        else:
            pmf = p * np.exp(np.log1p(-p) * (trials - 1))
        values = np.floor((num_negatives - 1) / trials)

        mean = float(np.sum(pmf * values))
        second = float(np.sum(pmf * values ** 2))
        return PairwiseMoments(
            mean=mean,
            std=math.sqrt(max(0.0, second - mean ** 2)),
            censor_probability=float((1.0 - p) ** max_trials),
        )

    @staticmethod
    def first_violation(
        draw: Callable[[int], tuple[np.ndarray, np.ndarray]],
        f_y: float,
        max_trials: int,
    ) -> tuple[int | None, int | None]:
        seen = 0
        chunk = FIRST_DRAW_CHUNK
        while seen < max_trials:
            items, scores = draw(min(chunk, max_trials - seen))
            hits = np.flatnonzero(1.0 + scores > f_y)
            if len(hits):
                return seen + int(hits[0]) + 1, int(items[hits[0]])
            seen += len(items)
            chunk = min(2 * chunk, MAX_DRAW_CHUNK)
        return None, None
