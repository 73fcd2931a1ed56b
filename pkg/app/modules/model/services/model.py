import logging

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.modules.data.schemas import InteractionDataset
from app.modules.model.contracts import IModelService
from app.modules.model.schemas import FactorModel, ModelConfig, feature_matrix


class ModelService(IModelService):
    """
    Initialization and bookkeeping for hybrid factorization models.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        """
        Initialize the service.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for model construction.
        """

        self._errors = errors
        self._logger = logger

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Random uniform initialization of embedding tables."
    )
    def init_model(self, cfg: ModelConfig, ds: InteractionDataset) -> FactorModel:
        user_features, item_features = self._features(ds)
        rng = np.random.default_rng(cfg.seed)
        shape_user = (user_features.shape[1], cfg.dim)
        shape_item = (item_features.shape[1], cfg.dim)

        if cfg.init_scale > 0:
            user_embeddings = rng.uniform(-cfg.init_scale, cfg.init_scale, size=shape_user)
            item_embeddings = rng.uniform(-cfg.init_scale, cfg.init_scale, size=shape_item)
        else:
            user_embeddings = np.zeros(shape_user)
            item_embeddings = np.zeros(shape_item)

        model = FactorModel(
            config=cfg,
            vocabulary=ds.vocabulary,
            user_features=user_features,
            item_features=item_features,
            user_embeddings=user_embeddings,
            item_embeddings=item_embeddings,
            item_bias=np.zeros(item_features.shape[1]),
        )
        self._logger.info(
            f"Initialized model: dim={cfg.dim} user_features={shape_user[0]} "
            f"item_features={shape_item[0]} parameters={self.parameter_count(model)}"
        )
        return model

    def popularity_model(self, ds: InteractionDataset) -> FactorModel:
        user_features, item_features = self._features(ds)
        item_bias = np.zeros(item_features.shape[1])
        # identity features come first, so item i's own bias is entry i
        item_bias[:ds.num_items] = np.asarray(ds.positives.sum(axis=0)).ravel()

        cfg = ModelConfig(dim=1, init_scale=0.0)
        return FactorModel(
            config=cfg,
            vocabulary=ds.vocabulary,
            user_features=user_features,
            item_features=item_features,
            user_embeddings=np.zeros((user_features.shape[1], 1)),
            item_embeddings=np.zeros((item_features.shape[1], 1)),
            item_bias=item_bias,
        )

    def reg_penalty(self, model: FactorModel, cfg: ModelConfig | None = None) -> float:
        cfg = cfg or model.config
        return float(
            cfg.l2_user * np.sum(model.user_embeddings ** 2)
            + cfg.l2_item * np.sum(model.item_embeddings ** 2)
        )

    def parameter_count(self, model: FactorModel) -> int:
        return int(model.user_embeddings.size + model.item_embeddings.size + model.item_bias.size)

    @staticmethod
    def _features(ds: InteractionDataset):
        vocab = ds.vocabulary
        return (
            feature_matrix(ds.num_users, len(vocab.user_attributes), ds.user_attributes),
            feature_matrix(ds.num_items, len(vocab.item_attributes), ds.item_attributes),
        )
