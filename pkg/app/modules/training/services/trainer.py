import logging
import time

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.common.utils import RandomStreams
from app.config.exception import ToolkitException
from app.modules.data.schemas import InteractionDataset
from app.modules.evaluation.contracts import IEvaluator
from app.modules.model.schemas import FactorModel, ParameterGradient
from app.modules.training.consts import EARLY_STOP_CUTOFF
from app.modules.training.contracts import IObjective, IOptimizer, ITrainer
from app.modules.training.schemas import EarlyStopDecision, EpochRecord, TrainConfig, TrainReport


class Trainer(ITrainer):
    """
    Mini-batch epoch loop.

    Each epoch visits the deduplicated training positives in a fresh random
    order, m observations per step. A step samples, computes the batch
    gradient against the current parameters and applies one update. After
    every epoch the dev split is scored with NDCG@30; the best epoch's
    parameters are kept.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
        evaluator: IEvaluator,
        workers: int | None = None,
    ):
        """
        Initialize the trainer.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for per-epoch progress.
        :param evaluator: Dev-split evaluator.
        :param workers: Thread cap for dev evaluation.
        """

        self._errors = errors
        self._logger = logger
        self._evaluator = evaluator
        self._workers = workers

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Mini-batch training with early stopping."
    )
    def fit(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
        cfg: TrainConfig,
        objective: IObjective,
        optimizer: IOptimizer,
    ) -> TrainReport:
        rng = RandomStreams(cfg.seed).generator()
        users, items = train_ds.positive_pairs()
        if not len(users):
            raise ToolkitException(self._errors.Data.NO_INTERACTIONS, cause="training split is empty")

        report = TrainReport(algorithm=cfg.algorithm)
        best = model.snapshot()

        for epoch in range(1, cfg.max_epochs + 1):
            started = time.perf_counter()
            order = rng.permutation(len(users))
            total = 0.0
            trials: list[np.ndarray] = []

            for start in range(0, len(order), cfg.minibatch_size):
                step = order[start:start + cfg.minibatch_size]
                batch = objective.sample(model, train_ds, users[step], items[step], cfg, rng)
                loss, grad = objective.loss_and_grad(model, batch, cfg)
                if not np.isfinite(loss):
                    raise ToolkitException(self._errors.Numeric.DIVERGENCE, cause=f"epoch {epoch}: objective {loss}")
                optimizer.apply(model, grad, cfg.learning_rate)
                self._check_finite(model, grad, epoch)
                total += loss
                if batch.trials is not None:
                    trials.append(batch.trials)

            seconds = time.perf_counter() - started
            dev_metric = self.dev_metric(model, train_ds, dev_ds, cfg)
            record = EpochRecord(
                epoch=epoch,
                objective=total / len(users),
                dev_metric=dev_metric,
                seconds=seconds,
                mean_trials=float(np.mean(np.concatenate(trials))) if trials else None,
            )
            report.epochs.append(record)
            self._logger.info(
                f"epoch {epoch}: objective={record.objective:.6f} dev NDCG@{EARLY_STOP_CUTOFF}={dev_metric:.4f} "
                f"seconds={seconds:.2f}" + (f" mean_trials={record.mean_trials:.1f}" if trials else "")
            )

            decision = self.early_stop(report.dev_metrics, cfg.patience)
            if decision.best_epoch == epoch:
                best = model.snapshot()
            if decision.stop:
                report.stopped_early = epoch < cfg.max_epochs
                break

        model.restore(best)
        decision = self.early_stop(report.dev_metrics, cfg.patience)
        report.best_epoch = decision.best_epoch
        report.best_dev_metric = report.dev_metrics[decision.best_epoch - 1]
        return report

    def early_stop(self, trajectory: list[float], patience: int) -> EarlyStopDecision:
        if not trajectory:
            return EarlyStopDecision(stop=False)
        # first occurrence of the maximum; equal values are not an improvement
        best_epoch = int(np.argmax(trajectory)) + 1
        return EarlyStopDecision(stop=len(trajectory) - best_epoch >= patience, best_epoch=best_epoch)

    def dev_metric(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> float:
        report = self._evaluator.evaluate(
            model, train_ds, dev_ds, [EARLY_STOP_CUTOFF], cfg.remove_historical, self._workers
        )
        return report.at(EARLY_STOP_CUTOFF).ndcg

    def _check_finite(self, model: FactorModel, grad: ParameterGradient, epoch: int) -> None:
        if not (
            np.isfinite(model.user_embeddings[grad.user_rows]).all()
            and np.isfinite(model.item_embeddings[grad.item_rows]).all()
            and np.isfinite(model.item_bias[grad.item_rows]).all()
        ):
            raise ToolkitException(self._errors.Numeric.DIVERGENCE, cause=f"epoch {epoch}: non-finite parameters")
