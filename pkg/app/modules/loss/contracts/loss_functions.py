from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np

from app.modules.loss.schemas import LossSpec


class ILossFunctions(ABC):
    """
    Abstract interface for the OWA, rank-sensitive and baseline losses.

    Rank arguments may be scalars or numpy arrays; results follow numpy
    broadcasting.
    """

    @abstractmethod
    def owa_alphas(self, n: int) -> np.ndarray:
        """
        Default OWA weights alpha_j = 1 / j for j = 1..n.

        :param n: Number of weights.
        :return: Nonincreasing weights.
        """
        ...

    @abstractmethod
    def owa_table(self, alphas: Sequence[float]) -> np.ndarray:
        """
        Prefix sums of the weights: entry r is the OWA loss of rank r.

        :param alphas: Nonincreasing, nonnegative weights.
        :return: Array of length len(alphas) + 1, entry 0 is 0.
        """
        ...

    @abstractmethod
    def owa_loss(self, alphas: Sequence[float], r: int) -> float:
        """
        Sum of the first r weights; ranks past the end use the full sum.

        :param alphas: Nonincreasing, nonnegative weights.
        :param r: Integer rank >= 0.
        :return: Loss value.
        """
        ...

    @abstractmethod
    def rank_loss(self, spec: LossSpec, r: np.ndarray | float) -> np.ndarray | float:
        """
        Smooth rank-sensitive loss (poly, log or exp family).

        :param spec: Loss spec.
        :param r: Rank(s) >= 0.
        :return: Loss value(s).
        :raises ToolkitException: If the family is not rank-sensitive.
        """
        ...

    @abstractmethod
    def rank_loss_grad(self, spec: LossSpec, r: np.ndarray | float) -> np.ndarray | float:
        """
        Derivative of `rank_loss` with respect to r.

        :param spec: Loss spec; `include_log_lambda` selects the exact exp derivative.
        :param r: Rank(s) >= 0.
        :return: Derivative value(s).
        """
        ...

    @abstractmethod
    def bpr_pair_loss(self, f_y: np.ndarray | float, f_neg: np.ndarray | float) -> np.ndarray | float:
        """
        Logistic pair loss -log sigma(f_y - f_neg).

        :param f_y: Positive score(s).
        :param f_neg: Negative score(s).
        :return: Loss value(s).
        """
        ...

    @abstractmethod
    def bpr_batch_loss(self, f_y: float, negatives: np.ndarray) -> float:
        """
        Mean logistic pair loss over a set of negative scores.

        :param f_y: Positive score.
        :param negatives: Negative scores.
        :return: Mean loss, 0 for an empty set.
        """
        ...

    @abstractmethod
    def cross_entropy_loss(self, f_y: float, candidate_scores: np.ndarray, target: int | None = None) -> float:
        """
        Softmax cross entropy -f_y + logsumexp(candidate_scores).

        :param f_y: Positive score.
        :param candidate_scores: Scores of the candidate set, which contains y.
        :param target: Position of y among the candidates, when known.
        :return: Loss value.
        :raises ToolkitException: If y is not among the candidates.
        """
        ...
