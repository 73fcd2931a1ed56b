from abc import ABC, abstractmethod
from pathlib import Path

from app.modules.data.schemas import InteractionDataset
from app.modules.model.schemas import FactorModel, ModelConfig


class IModelService(ABC):
    """
    Abstract interface for building and measuring factorization models.
    """

    @abstractmethod
    def init_model(self, cfg: ModelConfig, ds: InteractionDataset) -> FactorModel:
        """
        Build a model over the dataset's vocabularies with random embeddings.

        Embeddings are i.i.d. uniform in [-init_scale, init_scale]; biases are
        zero. Equal configs give bitwise-identical models.

        :param cfg: Model configuration.
        :param ds: Dataset supplying vocabularies and attribute tables.
        :return: Fresh model.
        """
        ...

    @abstractmethod
    def popularity_model(self, ds: InteractionDataset) -> FactorModel:
        """
        Build the popularity baseline: zero embeddings, identity item biases
        equal to each item's number of positives in `ds`.

        :param ds: Training dataset.
        :return: Model ranking items by popularity.
        """
        ...

    @abstractmethod
    def reg_penalty(self, model: FactorModel, cfg: ModelConfig | None = None) -> float:
        """
        Weighted squared L2 norm of the embedding tables.

        :param model: Model to measure.
        :param cfg: Coefficient source; defaults to the model's own config.
        :return: l2_user * |E_user|^2 + l2_item * |E_item|^2.
        """
        ...

    @abstractmethod
    def parameter_count(self, model: FactorModel) -> int:
        """
        Number of trainable scalars (embeddings and item biases).

        :param model: Model to measure.
        :return: Parameter count.
        """
        ...


class ICheckpointStore(ABC):
    """
    Abstract interface for persisting models.
    """

    @abstractmethod
    def save(self, model: FactorModel, path: str | Path) -> Path:
        """
        Write the model to an ``.npz`` container.

        :param model: Model to persist.
        :param path: Target file; the ``.npz`` suffix is appended when missing.
        :return: Written path.
        """
        ...

    @abstractmethod
    def load(self, path: str | Path) -> FactorModel:
        """
        Read a model written by `save`; the result equals the saved model bitwise.

        :param path: Checkpoint file.
        :return: Model.
        :raises ToolkitException: If the file is missing or has an unsupported format version.
        """
        ...
