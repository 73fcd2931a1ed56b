from abc import ABC, abstractmethod
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from app.common.contracts import IScorer
from app.modules.data.schemas import InteractionDataset
from app.modules.evaluation.consts import DEFAULT_CUTOFFS, ScoreProfile
from app.modules.evaluation.schemas import EvalReport, FidelityResult
from app.modules.model.schemas import FactorModel
from app.modules.ranking.consts import ComparatorKind


class IRankingMetrics(ABC):
    """
    Abstract interface for top-k retrieval and binary-relevance metrics.
    """

    @abstractmethod
    def topk(self, scorer: IScorer, user: int, k: int, exclude: Iterable[int] = ()) -> list[int]:
        """
        The k highest-scoring items outside `exclude`, ties broken by ascending item index.

        :param scorer: Score source.
        :param user: User index.
        :param k: List length, >= 1.
        :param exclude: Items never recommended.
        :return: Ranked item indices; shorter than k when fewer items remain.
        """
        ...

    @abstractmethod
    def precision_at_k(self, ranked: Sequence[int], relevant: Iterable[int], k: int) -> float:
        """
        hits@k / k.

        :raises ToolkitException: If `relevant` is empty or k < 1.
        """
        ...

    @abstractmethod
    def recall_at_k(self, ranked: Sequence[int], relevant: Iterable[int], k: int) -> float:
        """
        hits@k / |relevant|.

        :raises ToolkitException: If `relevant` is empty or k < 1.
        """
        ...

    @abstractmethod
    def ndcg_at_k(self, ranked: Sequence[int], relevant: Iterable[int], k: int) -> float:
        """
        Binary-gain DCG@k with log2(i + 1) discounts over the ideal DCG@k.

        :raises ToolkitException: If `relevant` is empty or k < 1.
        """
        ...


class IEvaluator(ABC):
    """
    Abstract interface for offline top-k evaluation.
    """

    @abstractmethod
    def evaluate(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        test_ds: InteractionDataset,
        cutoffs: Sequence[int] = DEFAULT_CUTOFFS,
        remove_historical: bool = True,
        workers: int | None = None,
    ) -> EvalReport:
        """
        Average precision, recall and NDCG over users with test positives.

        :param model: Model snapshot; read only.
        :param train_ds: Training split; its positives are excluded when `remove_historical`.
        :param test_ds: Test split sharing the training vocabularies.
        :param cutoffs: List lengths k.
        :param remove_historical: Drop training items from recommendation lists.
        :param workers: Thread cap; defaults to the runtime setting.
        :return: EvalReport.
        """
        ...


class IEstimatorStudies(ABC):
    """
    Abstract interface for estimator-quality studies.
    """

    @abstractmethod
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
        """
        Mean, std and relative std of the pairwise and mini-batch estimators
        on synthetic score vectors realizing each true rank.

        :param num_items: Item set size N (one positive, N - 1 negatives).
        :param true_ranks: Ranks to realize, each below N.
        :param q_list: Mini-batch sample fractions.
        :param resamples: Draws per (estimator, rank, q) cell.
        :param profile: Score vector shape.
        :param comparator: Comparator of the mini-batch and batch estimators.
        :param seed: Root seed; cells get independent child streams.
        :param workers: Thread cap.
        :return: Frame with columns estimator, q, true_rank, mean, std, rel_std.
        """
        ...

    @abstractmethod
    def synthetic_scores(self, num_items: int, true_rank: int, profile: ScoreProfile) -> np.ndarray:
        """
        Score vector whose item 0 has exactly `true_rank` negatives at or above it.

        :param num_items: Vector length N.
        :param true_rank: Target rank, below N.
        :param profile: Score vector shape.
        :return: Scores; item 0 is the positive.
        """
        ...

    @abstractmethod
    def rank_fidelity_study(
        self,
        model: FactorModel,
        ds: InteractionDataset,
        sample_users: int,
        comparator: ComparatorKind = ComparatorKind.MARGIN,
        num_bins: int = 10,
        seed: int = 0,
    ) -> FidelityResult:
        """
        Compare exact ranks with batch estimates for the positives of sampled users.

        :param model: Model snapshot.
        :param ds: Dataset whose positives are ranked.
        :param sample_users: Number of users drawn (users without positives are never drawn).
        :param comparator: Comparator of the batch estimate.
        :param num_bins: Equal-width true-rank bins.
        :param seed: Seed of the user draw.
        :return: Pairs, binned summary and Pearson correlation.
        """
        ...


class IReportWriter(ABC):
    """
    Abstract interface for writing reports and study tables.
    """

    @abstractmethod
    def write_eval_report(self, report: EvalReport, directory: str | Path) -> dict[str, Path]:
        """
        Write the report as JSON and as a per-cutoff CSV.

        :param report: Report to write.
        :param directory: Output directory.
        :return: Mapping of format to path.
        """
        ...

    @abstractmethod
    def write_table(self, frame: pd.DataFrame, path: str | Path, run_id: str | None = None) -> Path:
        """
        Write a CSV whose first line is a ``# run_id=`` comment when a run id is given.

        :param frame: Table to write.
        :param path: Output file.
        :param run_id: Manifest id of the producing run.
        :return: Written path.
        """
        ...
