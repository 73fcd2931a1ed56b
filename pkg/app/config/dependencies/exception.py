from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies.logger import get_base_logger
from app.config.contracts import ICommandExceptionHandler
from app.config.exception import CommandExceptionHandler


def get_exception_handler() -> ICommandExceptionHandler:
    """
    Returns an instance of CommandExceptionHandler.

    The handler wraps every CLI command: it logs escaping exceptions and
    converts them into the documented exit codes.

    :return: An instance of `CommandExceptionHandler`.
    """

    return CommandExceptionHandler(
        logger=get_base_logger(),
        errors=get_error_codes()
    )
