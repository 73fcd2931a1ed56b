from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_train_logger
from app.modules.loss.contracts import ILossFunctions
from app.modules.loss.services import LossFunctions


def get_loss_functions() -> ILossFunctions:
    """
    Dependency provider for ILossFunctions implementation.

    :return: Instance of LossFunctions.
    """

    return LossFunctions(errors=get_error_codes(), logger=get_train_logger())
