import logging
from typing import Iterable, Sequence

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.contracts import IScorer
from app.config.exception import ToolkitException
from app.modules.evaluation.contracts import IRankingMetrics


class RankingMetrics(IRankingMetrics):
    """
    Top-k lists and precision / recall / NDCG with binary gains.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        self._errors = errors
        self._logger = logger

    def topk(self, scorer: IScorer, user: int, k: int, exclude: Iterable[int] = ()) -> list[int]:
        scores = scorer.score_block([user], np.arange(scorer.num_items))[0]
        return self.topk_from_scores(scores, k, exclude).tolist()

    def topk_from_scores(self, scores: np.ndarray, k: int, exclude: Iterable[int] = ()) -> np.ndarray:
        """
        `topk` over an already computed score row.

        :param scores: Scores of all items.
        :param k: List length, >= 1.
        :param exclude: Items never recommended.
        :return: Ranked item indices.
        """

        if k < 1:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause=f"k={k}")
        # stable sort keeps ascending item index among equal scores
        order = np.argsort(-np.asarray(scores), kind="stable")
        exclude = np.fromiter(exclude, dtype=np.int64)
        if len(exclude):
            order = order[~np.isin(order, exclude)]
        return order[:k]

    def precision_at_k(self, ranked: Sequence[int], relevant: Iterable[int], k: int) -> float:
        relevant = self._relevant(relevant, k)
        return self._hits(ranked, relevant, k) / k

    def recall_at_k(self, ranked: Sequence[int], relevant: Iterable[int], k: int) -> float:
        relevant = self._relevant(relevant, k)
        return self._hits(ranked, relevant, k) / len(relevant)

    def ndcg_at_k(self, ranked: Sequence[int], relevant: Iterable[int], k: int) -> float:
        relevant = self._relevant(relevant, k)
        dcg = sum(1.0 / np.log2(i + 2) for i, item in enumerate(list(ranked)[:k]) if item in relevant)
        idcg = sum(1.0 / np.log2(i + 2) for i in range(min(k, len(relevant))))
        return float(dcg / idcg)

    @staticmethod
    def _hits(ranked: Sequence[int], relevant: frozenset[int], k: int) -> int:
        return sum(1 for item in list(ranked)[:k] if item in relevant)

    def _relevant(self, relevant: Iterable[int], k: int) -> frozenset[int]:
        if k < 1:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause=f"k={k}")
        relevant = frozenset(int(item) for item in relevant)
        if not relevant:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause="empty relevant set")
        return relevant
