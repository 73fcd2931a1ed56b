import logging
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from app.common.consts import ErrorCodesEnums
from app.config.exception import ToolkitException
from app.modules.loss.consts import LossFamily
from app.modules.loss.contracts import ILossFunctions
from app.modules.loss.schemas import LossSpec


class LossFunctions(ILossFunctions):
    """
    OWA loss, the poly/log/exp rank-sensitive families and the BPR and cross
    entropy baselines.

    The rank-sensitive families are increasing and concave on r >= 0:
    ``(1 + r)^p`` with 0 < p < 1, ``log(1 + r)`` and ``1 - lambda^-r`` with
    lambda > 1.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        self._errors = errors
        self._logger = logger

    def owa_alphas(self, n: int) -> np.ndarray:
        return 1.0 / np.arange(1, max(0, n) + 1, dtype=np.float64)

    def owa_table(self, alphas: Sequence[float]) -> np.ndarray:
        return np.concatenate(([0.0], np.cumsum(np.asarray(alphas, dtype=np.float64))))

    def owa_loss(self, alphas: Sequence[float], r: int) -> float:
        if r < 0:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause=f"negative rank {r}")
        alphas = np.asarray(alphas, dtype=np.float64)
        return float(np.sum(alphas[:min(int(r), len(alphas))]))

    def rank_loss(self, spec: LossSpec, r: np.ndarray | float) -> np.ndarray | float:
        r = self._ranks(r)
        if spec.family == LossFamily.POLY:
            return (1.0 + r) ** spec.p
        if spec.family == LossFamily.LOG:
            return np.log1p(r)
        if spec.family == LossFamily.EXP:
            return -np.expm1(-r * np.log(spec.lambda_))
        raise self._not_rank_sensitive(spec)

    def rank_loss_grad(self, spec: LossSpec, r: np.ndarray | float) -> np.ndarray | float:
        r = self._ranks(r)
        if spec.family == LossFamily.POLY:
            return spec.p * (1.0 + r) ** (spec.p - 1.0)
        if spec.family == LossFamily.LOG:
            return 1.0 / (1.0 + r)
        if spec.family == LossFamily.EXP:
            log_lambda = np.log(spec.lambda_)
            grad = np.exp(-r * log_lambda)
            return grad * log_lambda if spec.include_log_lambda else grad
        raise self._not_rank_sensitive(spec)

    def bpr_pair_loss(self, f_y: np.ndarray | float, f_neg: np.ndarray | float) -> np.ndarray | float:
        return np.logaddexp(0.0, np.subtract(f_neg, f_y))

    def bpr_batch_loss(self, f_y: float, negatives: np.ndarray) -> float:
        negatives = np.asarray(negatives, dtype=np.float64)
        if len(negatives) == 0:
            return 0.0
        return float(np.mean(self.bpr_pair_loss(f_y, negatives)))

    def cross_entropy_loss(self, f_y: float, candidate_scores: np.ndarray, target: int | None = None) -> float:
        candidate_scores = np.asarray(candidate_scores, dtype=np.float64)
        if target is None:
            present = bool(np.any(candidate_scores == f_y))
        else:
            # index check only: NaN scores from a diverged model never compare equal
            present = 0 <= target < len(candidate_scores)
        if not present:
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause="target item missing from candidates")
        return float(-f_y + logsumexp(candidate_scores))

    def _ranks(self, r: np.ndarray | float) -> np.ndarray | float:
        r = np.asarray(r, dtype=np.float64)
        if np.any(r < 0):
            raise ToolkitException(self._errors.Common.CONTRACT_VIOLATION, cause="rank must be >= 0")
        return r if r.ndim else float(r)

    def _not_rank_sensitive(self, spec: LossSpec) -> ToolkitException:
        return ToolkitException(
            self._errors.Config.INVALID_COMBINATION, cause=f"{spec.family} is not a rank-sensitive loss"
        )
