from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_train_logger
from app.common.utils.dependencies import get_config_file_reader
from app.modules.model.services.dependencies import get_model_service
from app.modules.training.contracts import ITrainingUseCase
from app.modules.training.services.dependencies import get_objective, get_optimizer, get_trainer
from app.modules.training.usecases.training import TrainingUseCase


def get_training_usecase(workers: int | None = None) -> ITrainingUseCase:
    """
    Dependency provider for ITrainingUseCase implementation.

    Wires the epoch loop, model construction, config merging and the
    per-algorithm objective and optimizer factories.

    :param workers: Thread cap for dev evaluation.
    :return: Instance of TrainingUseCase.
    """

    return TrainingUseCase(
        errors=get_error_codes(),
        logger=get_train_logger(),
        trainer=get_trainer(workers),
        model_service=get_model_service(),
        config_reader=get_config_file_reader(),
        objective_factory=get_objective,
        optimizer_factory=get_optimizer,
    )
