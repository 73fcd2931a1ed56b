from abc import ABC, abstractmethod

import numpy as np

from app.modules.data.schemas import InteractionDataset
from app.modules.model.schemas import FactorModel, ParameterGradient
from app.modules.training.schemas import EarlyStopDecision, TrainConfig, TrainingBatch, TrainReport


class IObjective(ABC):
    """
    Abstract interface for one algorithm's mini-batch objective.

    Sampling and differentiation are separate so a sampled batch can be
    differentiated repeatedly against perturbed parameters.
    """

    @abstractmethod
    def sample(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        users: np.ndarray,
        items: np.ndarray,
        cfg: TrainConfig,
        rng: np.random.Generator,
    ) -> TrainingBatch:
        """
        Draw the negatives or item subset a step needs.

        :param model: Current model (WARP scores while sampling).
        :param train_ds: Training split; its positives are never negatives.
        :param users: Observation users.
        :param items: Observation positives.
        :param cfg: Training config.
        :param rng: Random generator.
        :return: Sampled batch.
        """
        ...

    @abstractmethod
    def loss_and_grad(self, model: FactorModel, batch: TrainingBatch, cfg: TrainConfig) -> tuple[float, ParameterGradient]:
        """
        Batch objective (data term plus L2 on touched rows) and its gradient.

        :param model: Model at which to evaluate.
        :param batch: Sampled batch.
        :param cfg: Training config.
        :return: (objective, gradient over touched rows).
        """
        ...


class IOptimizer(ABC):
    """
    Abstract interface for applying a sparse gradient to a model in place.
    """

    @abstractmethod
    def apply(self, model: FactorModel, grad: ParameterGradient, learning_rate: float) -> None:
        """
        Update the touched rows of the model.

        :param model: Model to update.
        :param grad: Gradient over touched rows.
        :param learning_rate: Step size.
        """
        ...


class ITrainer(ABC):
    """
    Abstract interface for the epoch loop shared by all gradient algorithms.
    """

    @abstractmethod
    def fit(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        dev_ds: InteractionDataset,
        cfg: TrainConfig,
        objective: IObjective,
        optimizer: IOptimizer,
    ) -> TrainReport:
        """
        Run mini-batch epochs until early stopping or `max_epochs`, leaving the
        best dev-metric parameters in `model`.

        :param model: Model trained in place.
        :param train_ds: Training observations.
        :param dev_ds: Early-stopping split.
        :param cfg: Training config.
        :param objective: Algorithm objective.
        :param optimizer: Update rule.
        :return: TrainReport.
        :raises ToolkitException: If the objective or parameters become non-finite.
        """
        ...

    @abstractmethod
    def early_stop(self, trajectory: list[float], patience: int) -> EarlyStopDecision:
        """
        Stop once the best value is `patience` evaluations old.

        :param trajectory: Dev metric per evaluation, oldest first.
        :param patience: Evaluations without improvement tolerated.
        :return: Decision and 1-based best epoch (None for an empty trajectory).
        """
        ...

    @abstractmethod
    def dev_metric(self, model: FactorModel, train_ds: InteractionDataset, dev_ds: InteractionDataset, cfg: TrainConfig) -> float:
        """
        NDCG@30 of the model on the dev split, the early-stopping signal.

        :param model: Model snapshot.
        :param train_ds: Training split; its positives are excluded per `cfg.remove_historical`.
        :param dev_ds: Dev split.
        :param cfg: Training config.
        :return: Dev NDCG@30.
        """
        ...
