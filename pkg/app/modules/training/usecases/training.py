import logging
from typing import Any, Sequence

import pandas as pd

from app.common.consts import ErrorCodesEnums
from app.common.contracts import IConfigFileReader
from app.config.exception import ToolkitException
from app.modules.data.schemas import InteractionDataset
from app.modules.model.contracts import IModelService
from app.modules.model.schemas import FactorModel
from app.modules.training.consts import Algorithm
from app.modules.training.contracts import IObjective, IOptimizer, ITrainer, ITrainingUseCase
from app.modules.training.schemas import EpochRecord, TrainConfig, TrainReport


# Short config keys and the TrainConfig fields they set
CONFIG_ALIASES: dict[str, tuple[tuple[str, ...], ...]] = {
    "algo": (("algorithm",),),
    "q": (("sample_fraction",),),
    "lr": (("learning_rate",),),
    "epochs": (("max_epochs",),),
    "batch_size": (("minibatch_size",),),
    "m": (("minibatch_size",),),
    "cutoffs": (("eval_cutoffs",),),
    "dim": (("model", "dim"),),
    "init_scale": (("model", "init_scale"),),
    "l2": (("model", "l2_user"), ("model", "l2_item")),
    "l2_user": (("model", "l2_user"),),
    "l2_item": (("model", "l2_item"),),
}


class TrainingUseCase(ITrainingUseCase):
    """
    Coordinates config assembly, model construction and the per-algorithm
    training loops.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
        trainer: ITrainer,
        model_service: IModelService,
        config_reader: IConfigFileReader,
        objective_factory,
        optimizer_factory,
    ):
        """
        Initialize the use case.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for run summaries.
        :param trainer: Epoch loop.
        :param model_service: Model construction.
        :param config_reader: Merges config-file values with overrides.
        :param objective_factory: Callable mapping an Algorithm to its IObjective.
        :param optimizer_factory: Callable mapping an OptimizerKind to a fresh IOptimizer.
        """

        self._errors = errors
        self._logger = logger
        self._trainer = trainer
        self._model_service = model_service
        self._config_reader = config_reader
        self._objective_factory = objective_factory
        self._optimizer_factory = optimizer_factory

    def build_config(self, file_values: dict[str, Any], overrides: dict[str, Any]) -> TrainConfig:
        merged = self._config_reader.merge(self._canonical(file_values), self._canonical(overrides))
        model = dict(merged.get("model") or {})
        model.setdefault("seed", merged.get("seed", 0))
        merged["model"] = model
        return TrainConfig.model_validate(merged)

    def train(
        self,
        cfg: TrainConfig,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
    ) -> tuple[FactorModel, TrainReport]:
        if cfg.algorithm == Algorithm.POP:
            return self.train_pop(train_ds, dev_ds, cfg)

        model = self._model_service.init_model(cfg.model, train_ds)
        runners = {
            Algorithm.BARS: self.train_bars,
            Algorithm.WARP: self.train_warp,
            Algorithm.BPR: self.train_bpr,
            Algorithm.BBPR: self.train_bbpr,
            Algorithm.CE: self.train_ce,
        }
        report = runners[cfg.algorithm](model, train_ds, dev_ds, cfg)
        return model, report

    def train_bars(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        return self._fit(Algorithm.BARS, model, train_ds, dev_ds, cfg)

    def train_warp(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        return self._fit(Algorithm.WARP, model, train_ds, dev_ds, cfg)

    def train_bpr(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        return self._fit(Algorithm.BPR, model, train_ds, dev_ds, cfg)

    def train_bbpr(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        return self._fit(Algorithm.BBPR, model, train_ds, dev_ds, cfg)

    def train_ce(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        return self._fit(Algorithm.CE, model, train_ds, dev_ds, cfg)

    def train_pop(self, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> tuple[FactorModel, TrainReport]:
        model = self._model_service.popularity_model(train_ds)
        dev_metric = self._trainer.dev_metric(model, train_ds, dev_ds, cfg)
        report = TrainReport(
            algorithm=Algorithm.POP,
            epochs=[EpochRecord(epoch=1, objective=0.0, dev_metric=dev_metric, seconds=0.0)],
            best_epoch=1,
            best_dev_metric=dev_metric,
        )
        return model, report

    def grid(
        self,
        cfg: TrainConfig,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
        dims: Sequence[int],
        learning_rates: Sequence[float],
    ) -> pd.DataFrame:
        rows = []
        for dim in dims:
            for lr in learning_rates:
                run_cfg = cfg.model_copy(update={
                    "learning_rate": float(lr),
                    "model": cfg.model.model_copy(update={"dim": int(dim)}),
                })
                _, report = self.train(run_cfg, train_ds, dev_ds)
                rows.append({
                    "dim": int(dim),
                    "learning_rate": float(lr),
                    "best_epoch": report.best_epoch,
                    "best_dev_ndcg": report.best_dev_metric,
                })
                self._logger.info(f"grid dim={dim} lr={lr}: best dev NDCG={report.best_dev_metric:.4f}")
        return pd.DataFrame(rows, columns=["dim", "learning_rate", "best_epoch", "best_dev_ndcg"])

    def _fit(
        self,
        algorithm: Algorithm,
        model: FactorModel,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
        cfg: TrainConfig,
    ) -> TrainReport:
        if cfg.algorithm != algorithm:
            raise ToolkitException(
                self._errors.Common.CONTRACT_VIOLATION, cause=f"config is for {cfg.algorithm}, not {algorithm}"
            )
        objective: IObjective = self._objective_factory(algorithm)
        optimizer: IOptimizer = self._optimizer_factory(cfg.optimizer)
        self._logger.info(
            f"Training {algorithm}: loss={cfg.loss.family} comparator={cfg.comparator} "
            f"q={cfg.sample_fraction} lr={cfg.learning_rate} dim={cfg.model.dim} m={cfg.minibatch_size}"
        )
        return self._trainer.fit(model, train_ds, dev_ds, cfg, objective, optimizer)

    @staticmethod
    def _canonical(values: dict[str, Any]) -> dict[str, Any]:
        canonical: dict[str, Any] = {}
        for key, value in values.items():
            if value is None:
                continue
            if isinstance(value, dict):
                value = TrainingUseCase._canonical(value)
            for path in CONFIG_ALIASES.get(key, ((key,),)):
                node = canonical
                for part in path[:-1]:
                    node = node.setdefault(part, {})
                if isinstance(node.get(path[-1]), dict) and isinstance(value, dict):
                    node[path[-1]] = {**node[path[-1]], **value}
                else:
                    node[path[-1]] = value
        return canonical
