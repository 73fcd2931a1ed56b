import logging
import sys

from app.common.consts.enums import LoggerConfig, LoggerConfigEnum, LoggerConfigEnums
from app.common.contracts import ILoggerManager


class LoggerManager(ILoggerManager):
    """
    Centralized logger manager that provides configured loggers
    based on predefined configuration enums.

    Each logger is configured once and cached for reuse. Records go to
    stderr; stdout is kept for machine-readable command output.
    """

    def __init__(
            self,
            config: LoggerConfigEnums,
            level: str | None = None,
    ):
        """
        Initialize the LoggerManager with a logger configuration provider.

        :param config: Logger configuration enums with format, level, and name presets.
        :param level: Optional level overriding the preset level of every logger.
        """
        self._config = config
        self._level = level
        self._loggers: dict[str, logging.Logger] = {}

    @staticmethod
    def _configure_logger(logger: logging.Logger, level: str, fmt: str) -> None:
        """
        Set up logging configuration for a logger instance.

        :param logger: Logger instance to configure.
        :param level: Logging level (e.g., 'INFO', 'DEBUG').
        :param fmt: Format string for log messages.
        """
        logger.setLevel(level)
        logger.propagate = False

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(logging.Formatter(fmt))
        logger.addHandler(console_handler)

    def _get_logger(self, config: LoggerConfig) -> logging.Logger:
        """
        Retrieve a logger instance based on the provided configuration.
        If the logger has not been created yet, it will be configured and cached.

        :param config: Logger configuration containing name, level, and format.
        :return: A configured and cached logger instance.
        """
        if config.name in self._loggers:
            return self._loggers[config.name]

        logger = logging.getLogger(str(config.name))
        if not logger.hasHandlers():
            self._configure_logger(logger, str(self._level or config.level), str(config.format))

        self._loggers[config.name] = logger
        return logger

    def get_base_logger(self) -> logging.Logger:
        """Get logger for base-level application logs."""
        return self._get_logger(LoggerConfigEnum.BASE.value)

    def get_data_logger(self) -> logging.Logger:
        """Get logger for ingestion and splits."""
        return self._get_logger(LoggerConfigEnum.DATA.value)

    def get_model_logger(self) -> logging.Logger:
        """Get logger for model construction and checkpoints."""
        return self._get_logger(LoggerConfigEnum.MODEL.value)

    def get_ranking_logger(self) -> logging.Logger:
        """Get logger for rank estimators."""
        return self._get_logger(LoggerConfigEnum.RANKING.value)

    def get_train_logger(self) -> logging.Logger:
        """Get logger for training loops."""
        return self._get_logger(LoggerConfigEnum.TRAIN.value)

    def get_eval_logger(self) -> logging.Logger:
        """Get logger for evaluation and studies."""
        return self._get_logger(LoggerConfigEnum.EVAL.value)

    def set_level(self, level: str) -> None:
        """Re-level every preset logger, including ones configured before this call."""
        self._level = level
        for preset in LoggerConfigEnum:
            logger = self._get_logger(preset.value)
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)
