import logging

from app.common.consts import LoggerConfigEnums
from app.common.consts.dependencies import get_logger_config
from app.common.contracts import ILoggerManager
from app.common.logger import LoggerManager
from app.config.settings import settings


def get_logger_manager(
    config: LoggerConfigEnums | None = None,
) -> ILoggerManager:
    """
    Dependency provider for LoggerManager with injected configuration.

    :param config: Logger configuration enums.
    :return: Initialized LoggerManager instance.
    """
    return LoggerManager(config or get_logger_config(), level=str(settings.runtime.LOG_LEVEL))


def get_base_logger(
    manager: ILoggerManager | None = None,
) -> logging.Logger:
    """
    Retrieve the base logger instance.

    :param manager: LoggerManager instance.
    :return: Configured base logger.
    """
    return (manager or get_logger_manager()).get_base_logger()


def get_data_logger(
    manager: ILoggerManager | None = None,
) -> logging.Logger:
    """
    Retrieve the data logger instance.

    :param manager: LoggerManager instance.
    :return: Configured data logger.
    """
    return (manager or get_logger_manager()).get_data_logger()


def get_model_logger(
    manager: ILoggerManager | None = None,
) -> logging.Logger:
    """
    Retrieve the model logger instance.

    :param manager: LoggerManager instance.
    :return: Configured model logger.
    """
    return (manager or get_logger_manager()).get_model_logger()


def get_ranking_logger(
    manager: ILoggerManager | None = None,
) -> logging.Logger:
    """
    Retrieve the ranking logger instance.

    :param manager: LoggerManager instance.
    :return: Configured ranking logger.
    """
    return (manager or get_logger_manager()).get_ranking_logger()


def get_train_logger(
    manager: ILoggerManager | None = None,
) -> logging.Logger:
    """
    Retrieve the training logger instance.

    :param manager: LoggerManager instance.
    :return: Configured training logger.
    """
    return (manager or get_logger_manager()).get_train_logger()


def get_eval_logger(
    manager: ILoggerManager | None = None,
) -> logging.Logger:
    """
    Retrieve the evaluation logger instance.

    :param manager: LoggerManager instance.
    :return: Configured evaluation logger.
    """
    return (manager or get_logger_manager()).get_eval_logger()
