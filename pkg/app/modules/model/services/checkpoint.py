import json
import logging
from pathlib import Path

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.config.exception import ToolkitException
from app.config.settings import settings
from app.modules.data.schemas import Vocabulary
from app.modules.model.consts import CHECKPOINT_SUFFIX, CheckpointKeys
from app.modules.model.contracts import ICheckpointStore
from app.modules.model.schemas import FactorModel, ModelConfig, csr_from_structure


class CheckpointStore(ICheckpointStore):
    """
    ``.npz`` checkpoints.

    Arrays are stored under the names in `CheckpointKeys`; the ``metadata``
    entry is a JSON string with the format version, model config and
    vocabularies. Feature matrices are binary, so only their CSR structure is
    stored. Nothing is pickled.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        self._errors = errors
        self._logger = logger

    def save(self, model: FactorModel, path: str | Path) -> Path:
        path = Path(path)
        if path.suffix != CHECKPOINT_SUFFIX:
            path = path.with_name(path.name + CHECKPOINT_SUFFIX)
        path.parent.mkdir(parents=True, exist_ok=True)

        metadata = {
            "format_version": settings.project.CHECKPOINT_FORMAT_VERSION,
            "project_version": settings.project.PROJECT_VERSION,
            "config": model.config.model_dump(),
            "vocabulary": model.vocabulary.model_dump(),
        }
        np.savez(
            path,
            **{
                CheckpointKeys.METADATA.value: np.array(json.dumps(metadata)),
                CheckpointKeys.USER_EMBEDDINGS.value: model.user_embeddings,
                CheckpointKeys.ITEM_EMBEDDINGS.value: model.item_embeddings,
                CheckpointKeys.ITEM_BIAS.value: model.item_bias,
                CheckpointKeys.USER_FEATURES_INDPTR.value: model.user_features.indptr,
                CheckpointKeys.USER_FEATURES_INDICES.value: model.user_features.indices,
                CheckpointKeys.ITEM_FEATURES_INDPTR.value: model.item_features.indptr,
                CheckpointKeys.ITEM_FEATURES_INDICES.value: model.item_features.indices,
            },
        )
        self._logger.info(f"Saved checkpoint {path}")
        return path

    def load(self, path: str | Path) -> FactorModel:
        path = Path(path)
        if not path.is_file():
            raise ToolkitException(self._errors.Model.CHECKPOINT_NOT_FOUND, cause=str(path))

        with np.load(path, allow_pickle=False) as archive:
            metadata = json.loads(str(archive[CheckpointKeys.METADATA.value][()]))
            version = metadata.get("format_version")
            if version != settings.project.CHECKPOINT_FORMAT_VERSION:
                raise ToolkitException(self._errors.Model.CHECKPOINT_VERSION, cause=f"{path}: version {version}")

            user_embeddings = archive[CheckpointKeys.USER_EMBEDDINGS.value]
            item_embeddings = archive[CheckpointKeys.ITEM_EMBEDDINGS.value]
            vocabulary = Vocabulary.model_validate(metadata["vocabulary"])
            model = FactorModel(
                config=ModelConfig.model_validate(metadata["config"]),
                vocabulary=vocabulary,
                user_features=csr_from_structure(
                    archive[CheckpointKeys.USER_FEATURES_INDPTR.value],
                    archive[CheckpointKeys.USER_FEATURES_INDICES.value],
                    (len(vocabulary.users), user_embeddings.shape[0]),
                ),
                item_features=csr_from_structure(
                    archive[CheckpointKeys.ITEM_FEATURES_INDPTR.value],
                    archive[CheckpointKeys.ITEM_FEATURES_INDICES.value],
                    (len(vocabulary.items), item_embeddings.shape[0]),
                ),
                user_embeddings=user_embeddings,
                item_embeddings=item_embeddings,
                item_bias=archive[CheckpointKeys.ITEM_BIAS.value],
            )

        self._logger.info(f"Loaded checkpoint {path}: dim={model.dim}")
        return model
