from abc import ABC, abstractmethod
import logging


class ILoggerManager(ABC):
    """
    Interface for a logger manager that provides access to the loggers
    used throughout the toolkit.

    Each logger should be configured according to the project's
    logging standards (level, format, handlers, etc.).
    """

    @abstractmethod
    def get_base_logger(self) -> logging.Logger:
        """Returns the base application logger (general-purpose logging)."""
        ...

    @abstractmethod
    def get_data_logger(self) -> logging.Logger:
        """Returns the logger used for ingestion and splitting."""
        ...

    @abstractmethod
    def get_model_logger(self) -> logging.Logger:
        """Returns the logger used for model construction and checkpoints."""
        ...

    @abstractmethod
    def get_ranking_logger(self) -> logging.Logger:
        """Returns the logger used by rank estimators."""
        ...

    @abstractmethod
    def get_train_logger(self) -> logging.Logger:
        """Returns the logger used by training loops."""
        ...

    @abstractmethod
    def get_eval_logger(self) -> logging.Logger:
        """Returns the logger used by evaluation and studies."""
        ...

    @abstractmethod
    def set_level(self, level: str) -> None:
        """Re-level every preset logger and its handlers."""
        ...
