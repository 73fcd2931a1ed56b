import logging
import math
from abc import abstractmethod

import numpy as np
from scipy.special import expit, logsumexp, softmax

from app.common.consts import ErrorCodesEnums
from app.modules.data.schemas import InteractionDataset
from app.modules.loss.contracts import ILossFunctions
from app.modules.model.schemas import FactorModel, ParameterGradient
from app.modules.ranking.contracts import IRankEstimator
from app.modules.ranking.services import Comparator
from app.modules.training.contracts import IObjective
from app.modules.training.schemas import TrainConfig, TrainingBatch


class BaseObjective(IObjective):
    """
    Shared plumbing: score the batch block, let the algorithm turn scores into
    (loss, dL/dscores), chain back to the touched rows and add their L2 term.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
        losses: ILossFunctions,
    ):
        """
        Initialize the objective.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for training diagnostics.
        :param losses: Loss function implementations.
        """

        self._errors = errors
        self._logger = logger
        self._losses = losses

    @abstractmethod
    def loss_and_dscores(self, scores: np.ndarray, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, np.ndarray]:
        """
        Data term of the batch objective and its gradient with respect to the score block.

        :param scores: Block of shape (len(batch.users), len(batch.candidates)).
        :param batch: Sampled batch.
        :param cfg: Training config.
        :return: (loss, dL/dscores).
        """
        ...

    def loss_and_grad(self, model: FactorModel, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, ParameterGradient]:
        scores = model.score_block(batch.users, batch.candidates)
        loss, dscores = self.loss_and_dscores(scores, batch, cfg)
        grad = model.backward(batch.users, batch.candidates, dscores)
        return loss + self._regularize(model, grad), grad

    @staticmethod
    def _regularize(model: FactorModel, grad: ParameterGradient) -> float:
        l2_user, l2_item = model.config.l2_user, model.config.l2_item
        user_rows = model.user_embeddings[grad.user_rows]
        item_rows = model.item_embeddings[grad.item_rows]
        grad.user_grad[...] += 2.0 * l2_user * user_rows
        grad.item_grad[...] += 2.0 * l2_item * item_rows
        return float(l2_user * np.sum(user_rows ** 2) + l2_item * np.sum(item_rows ** 2))

    @staticmethod
    def _with_candidates(
        users: np.ndarray,
        items: np.ndarray,
        extra: np.ndarray,
        **fields,
    ) -> TrainingBatch:
        candidates = np.union1d(items, extra).astype(np.int64)
        return TrainingBatch(
            users=np.asarray(users, dtype=np.int64),
            items=np.asarray(items, dtype=np.int64),
            candidates=candidates,
            pos_col=np.searchsorted(candidates, items),
            **fields,
        )


class SharedSubsetObjective(BaseObjective):
    """
    Objectives that score every observation of a batch against one shared
    uniform item subset Z with |Z| = ceil(q |Y|).
    """

    # CE keeps the user's other positives among its candidates
    mask_positives = True

    def sample(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        users: np.ndarray,
        items: np.ndarray,
        cfg: TrainConfig,
        rng: np.random.Generator,
    ) -> TrainingBatch:
        num_items = train_ds.num_items
        size = math.ceil(round(cfg.sample_fraction * num_items, 9))
        subset = np.sort(rng.choice(num_items, size=size, replace=False))

        candidates = np.union1d(items, subset)
        mask = np.broadcast_to(np.isin(candidates, subset), (len(users), len(candidates))).copy()
        if self.mask_positives:
            mask &= train_ds.positives[users][:, candidates].toarray() == 0
        return self._with_candidates(users, items, subset, mask=mask, scale=num_items / size)


class BarsObjective(SharedSubsetObjective):
    """
    Rank-sensitive loss of the mini-batch rank estimate:
    sum over observations of l(|Y|/|Z| * sum over negatives in Z of c(f_y, f_y')).
    """

    def loss_and_dscores(self, scores: np.ndarray, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, np.ndarray]:
        rows = np.arange(len(batch.users))
        f_y = scores[rows, batch.pos_col][:, None]

        terms = Comparator.value(cfg.comparator, f_y, scores) * batch.mask
        ranks = batch.scale * terms.sum(axis=1)
        loss = float(np.sum(self._losses.rank_loss(cfg.loss, ranks)))

        outer = batch.scale * np.asarray(self._losses.rank_loss_grad(cfg.loss, ranks))
        dterms = Comparator.derivative(cfg.comparator, f_y, scores) * batch.mask
        dscores = outer[:, None] * dterms
        dscores[rows, batch.pos_col] -= outer * dterms.sum(axis=1)
        return loss, dscores


class BatchBprObjective(SharedSubsetObjective):
    """Mean logistic pair loss against the shared subset's negatives, summed over observations."""

    def loss_and_dscores(self, scores: np.ndarray, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, np.ndarray]:
        rows = np.arange(len(batch.users))
        f_y = scores[rows, batch.pos_col][:, None]
        counts = batch.mask.sum(axis=1)
        inverse = np.divide(1.0, counts, out=np.zeros(len(counts)), where=counts > 0)

        pair_losses = self._losses.bpr_pair_loss(f_y, scores) * batch.mask
        loss = float(np.sum(pair_losses.sum(axis=1) * inverse))

        dscores = expit(scores - f_y) * batch.mask * inverse[:, None]
        dscores[rows, batch.pos_col] -= dscores.sum(axis=1)
        return loss, dscores


class CrossEntropyObjective(SharedSubsetObjective):
    """Softmax cross entropy over the batch positives plus the shared subset."""

    mask_positives = False

    def loss_and_dscores(self, scores: np.ndarray, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, np.ndarray]:
        rows = np.arange(len(batch.users))
        loss = float(np.sum(logsumexp(scores, axis=1) - scores[rows, batch.pos_col]))
        dscores = softmax(scores, axis=1)
        dscores[rows, batch.pos_col] -= 1.0
        return loss, dscores


class BprObjective(BaseObjective):
    """Logistic pair loss against one uniform negative per observation."""

    # redraws per observation before giving up on users with few negatives
    MAX_REDRAWS = 100

    def sample(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        users: np.ndarray,
        items: np.ndarray,
        cfg: TrainConfig,
        rng: np.random.Generator,
    ) -> TrainingBatch:
        negatives = np.full(len(users), -1, dtype=np.int64)
        pending = np.arange(len(users))
        positives = train_ds.positives
        for _ in range(self.MAX_REDRAWS):
            if not len(pending):
                break
            draws = rng.integers(0, train_ds.num_items, size=len(pending))
            hit = np.asarray(positives[users[pending], draws]).ravel() > 0
            negatives[pending[~hit]] = draws[~hit]
            pending = pending[hit]

        batch = self._with_candidates(users, items, negatives[negatives >= 0])
        neg_col = np.where(negatives >= 0, np.searchsorted(batch.candidates, np.maximum(negatives, 0)), -1)
        return batch.model_copy(update={"neg_col": neg_col})

    def loss_and_dscores(self, scores: np.ndarray, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, np.ndarray]:
        rows = np.flatnonzero(batch.neg_col >= 0)
        f_y = scores[rows, batch.pos_col[rows]]
        f_neg = scores[rows, batch.neg_col[rows]]

        loss = float(np.sum(self._losses.bpr_pair_loss(f_y, f_neg)))
        weight = expit(f_neg - f_y)
        dscores = np.zeros_like(scores)
        dscores[rows, batch.neg_col[rows]] += weight
        dscores[rows, batch.pos_col[rows]] -= weight
        return loss, dscores


class WarpObjective(BaseObjective):
    """
    Pairwise sampled rank fed through the OWA loss: each observation samples
    negatives until one violates the margin at trial N, then contributes
    Phi(floor((|negatives| - 1) / N)) * |1 - f_y + f_y'|_+. Censored
    observations contribute nothing.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
        losses: ILossFunctions,
        estimator: IRankEstimator,
    ):
        super().__init__(errors, logger, losses)
        self._estimator = estimator

    def sample(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        users: np.ndarray,
        items: np.ndarray,
        cfg: TrainConfig,
        rng: np.random.Generator,
    ) -> TrainingBatch:
        num_items = train_ds.num_items
        alphas = cfg.loss.alphas if cfg.loss.alphas is not None else self._losses.owa_alphas(num_items)
        table = self._losses.owa_table(alphas)

        violators = np.full(len(users), -1, dtype=np.int64)
        weights = np.zeros(len(users))
        trials = np.zeros(len(users), dtype=np.int64)
        for b, (user, y) in enumerate(zip(users.tolist(), items.tolist())):
            positives = train_ds.user_positives(user)
            num_negatives = num_items - len(positives)
            if num_negatives == 0:
                continue
            f_y = model.score_block([user], [y])[0, 0]

            def draw(count: int, user=user, positives=positives) -> tuple[np.ndarray, np.ndarray]:
                raw = rng.integers(0, num_items, size=count)
                kept = raw[~np.isin(raw, positives)]
                return kept, model.score_block([user], kept)[0]

            max_trials = max(1, num_negatives - 1)
            trial, item = self._estimator.first_violation(draw, f_y, max_trials)
            if trial is None:
                trials[b] = max_trials
                continue
            trials[b] = trial
            violators[b] = item
            weights[b] = table[min((num_negatives - 1) // trial, len(table) - 1)]

        batch = self._with_candidates(users, items, violators[violators >= 0])
        neg_col = np.where(violators >= 0, np.searchsorted(batch.candidates, np.maximum(violators, 0)), -1)
        return batch.model_copy(update={"neg_col": neg_col, "weights": weights, "trials": trials})

    def loss_and_dscores(self, scores: np.ndarray, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, np.ndarray]:
        rows = np.flatnonzero(batch.neg_col >= 0)
        margin = 1.0 - scores[rows, batch.pos_col[rows]] + scores[rows, batch.neg_col[rows]]
        weights = batch.weights[rows]

        loss = float(np.sum(weights * np.maximum(0.0, margin)))
        slope = weights * (margin > 0)
        dscores = np.zeros_like(scores)
        dscores[rows, batch.neg_col[rows]] += slope
        dscores[rows, batch.pos_col[rows]] -= slope
        return loss, dscores
