from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_model_logger
from app.modules.model.contracts import ICheckpointStore, IModelService
from app.modules.model.services import CheckpointStore, ModelService


def get_model_service() -> IModelService:
    """
    Dependency provider for IModelService implementation.

    :return: Instance of ModelService.
    """

    return ModelService(errors=get_error_codes(), logger=get_model_logger())


def get_checkpoint_store() -> ICheckpointStore:
    """
    Dependency provider for ICheckpointStore implementation.

    :return: Instance of CheckpointStore.
    """

    return CheckpointStore(errors=get_error_codes(), logger=get_model_logger())
