from abc import ABC, abstractmethod
from typing import Callable, Iterable

import numpy as np

from app.common.contracts import IScorer
from app.modules.ranking.consts import ComparatorKind
from app.modules.ranking.schemas import PairwiseMoments, RankEstimate


class IRankEstimator(ABC):
    """
    Abstract interface for the exact rank and its approximations.

    Every estimator is pure given a scorer snapshot and an explicit numpy
    Generator.
    """

    @abstractmethod
    def true_rank(self, scores: np.ndarray, y: int, positives: Iterable[int]) -> int:
        """
        Number of negatives scored at or above the positive item `y`.

        :param scores: Scores of all items for one user.
        :param y: Positive item.
        :param positives: The user's positive items (contains `y`).
        :return: Exact rank; ties count.
        :raises ToolkitException: If `y` is not a positive.
        """
        ...

    @abstractmethod
    def pointwise_rank(self, score: float) -> float:
        """
        Pointwise estimate 1 / sigma(score).

        :param score: Positive item score.
        :return: Estimate, at least 1.
        """
        ...

    @abstractmethod
    def pairwise_sampled_rank(
        self,
        scorer: IScorer,
        user: int,
        y: int,
        negatives: np.ndarray,
        rng: np.random.Generator,
        max_trials: int | None = None,
    ) -> RankEstimate:
        """
        Draw negatives uniformly with replacement until one violates the margin
        (1 + f_y' > f_y) and return floor((|negatives| - 1) / N) for the
        violating trial N.

        :param scorer: Score source.
        :param user: User index.
        :param y: Positive item.
        :param negatives: Non-empty array of the user's negative items.
        :param rng: Random generator.
        :param max_trials: Trial cap; defaults to |negatives| - 1.
        :return: Estimate; censored with value 0 when the cap is reached.
        """
        ...

    @abstractmethod
    def batch_rank(
        self,
        kind: ComparatorKind,
        scorer: IScorer,
        user: int,
        y: int,
        negatives: np.ndarray,
    ) -> RankEstimate:
        """
        Sum of comparator terms over all negatives.

        :param kind: Comparator form.
        :param scorer: Score source.
        :param user: User index.
        :param y: Positive item, not among `negatives`.
        :param negatives: Negative items.
        :return: Estimate.
        """
        ...

    @abstractmethod
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
        """
        Comparator sum over a uniform subset Z of the item universe, drawn
        without replacement with |Z| = ceil(q |Y|), positives masked out and the
        sum scaled by |Y| / |Z|.

        :param kind: Comparator form.
        :param scorer: Score source.
        :param user: User index.
        :param y: Positive item.
        :param item_universe: All items Y.
        :param positives: The user's positive items.
        :param q: Sample fraction in (0, 1].
        :param rng: Random generator.
        :return: Estimate; equals `batch_rank` when q = 1.
        """
        ...

    @abstractmethod
    def expected_pairwise_estimate(
        self,
        num_negatives: int,
        num_violators: int,
        max_trials: int | None = None,
    ) -> PairwiseMoments:
        """
        Exact moments of the pairwise estimate when `num_violators` of
        `num_negatives` negatives violate the margin.

        :param num_negatives: |negatives|.
        :param num_violators: Number of margin violators.
        :param max_trials: Trial cap; defaults to |negatives| - 1.
        :return: Mean, standard deviation and censoring probability.
        """
        ...

    @staticmethod
    @abstractmethod
    def first_violation(
        draw: Callable[[int], tuple[np.ndarray, np.ndarray]],
        f_y: float,
        max_trials: int,
    ) -> tuple[int | None, int | None]:
        """
        Run sampling trials until a margin violator appears.

        :param draw: Callable returning up to n freshly drawn negatives and their scores.
        :param f_y: Positive item score.
        :param max_trials: Trial cap.
        :return: (trial number, violating item), or (None, None) when censored.
        """
        ...
