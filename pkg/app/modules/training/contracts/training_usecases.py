from abc import ABC, abstractmethod
from typing import Any, Sequence

import pandas as pd

from app.modules.data.schemas import InteractionDataset
from app.modules.model.schemas import FactorModel
from app.modules.training.schemas import TrainConfig, TrainReport


class ITrainingUseCase(ABC):
    """
    Abstract interface for running the training algorithms end to end.
    """

    @abstractmethod
    def build_config(self, file_values: dict[str, Any], overrides: dict[str, Any]) -> TrainConfig:
        """
        Merge config-file values with command-line overrides into a TrainConfig.

        :param file_values: Nested values read from a ``key=value`` file.
        :param overrides: Flag values; None means not given.
        :return: Validated config.
        """
        ...

    @abstractmethod
    def train(
        self,
        cfg: TrainConfig,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
    ) -> tuple[FactorModel, TrainReport]:
        """
        Initialize a model and train it with the configured algorithm.

        :return: (trained model, report).
        """
        ...

    @abstractmethod
    def train_bars(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        ...

    @abstractmethod
    def train_warp(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        ...

    @abstractmethod
    def train_bpr(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        ...

    @abstractmethod
    def train_bbpr(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        ...

    @abstractmethod
    def train_ce(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> TrainReport:
        ...

    @abstractmethod
    def train_pop(self, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> tuple[FactorModel, TrainReport]:
        """
        Popularity baseline; nothing is learned beyond item counts.
        """
        ...

    @abstractmethod
    def grid(
        self,
        cfg: TrainConfig,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
        dims: Sequence[int],
        learning_rates: Sequence[float],
    ) -> pd.DataFrame:
        """
        Train once per (dim, learning rate) and tabulate the best dev metric.

        :return: Frame with columns dim, learning_rate, best_epoch, best_dev_ndcg.
        """
        ...
