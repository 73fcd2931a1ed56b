import logging
import time
from functools import wraps


class LoggingFunctionInfo:
    """
    Decorator class that logs when a service method starts and how long it ran.

    Long operations (training, evaluation, studies) are wrapped with it so a
    debug log shows the call order and wall-clock cost of each stage.
    """

    def __init__(
            self,
            logger: logging.Logger,
            description: str | None = None
    ):
        """
        Initialize the LoggingFunctionInfo decorator.

        :param logger: Logger instance used for emitting debug logs.
        :param description: Optional human-readable description of the function.
        """

        self._description = description
        self._logger = logger

    def __call__(self, func):
        """
        Decorate a function to log its invocation and elapsed time.

        :param func: The function to decorate.
        :return: Wrapped function with logging.
        """

        @wraps(func)
        def wrapper(*args, **kwargs):
            log_message = f"Start: {func.__qualname__}"
            if self._description:
                log_message += f", description: {self._description}"
            self._logger.debug(log_message)

            started = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                self._logger.debug(f"Done: {func.__qualname__} in {time.perf_counter() - started:.3f}s")

        return wrapper
