import logging
import traceback
from enum import Enum

import click
from pydantic import ValidationError

from app.common.consts import ErrorCodesEnums
from app.config.contracts import ICommandExceptionHandler


class ToolkitException(Exception):
    cause: str = ""

    def __init__(
        self,
        error: Enum,
        *,
        cause: str = ""
    ):
        if not isinstance(error, Enum):
            raise ValueError("The provided error must be an instance of Enum")

        self.error = error
        self.error_code = error.value[0]
        self.exit_code = error.value[1]
        self.description = error.value[2]
        self.cause = cause
        super().__init__(self.message)

    @property
    def message(self) -> str:
        if self.cause:
            return f"{self.description}: {self.cause}"
        return self.description


class CommandExceptionHandler(ICommandExceptionHandler):
    """
    Translates exceptions escaping a command into a log record, a short
    message on stderr and a process exit code.

    ToolkitException carries its own exit code, pydantic validation errors are
    configuration errors, anything else is reported as undefined.
    """

    def __init__(
        self,
        logger: logging.Logger,
        errors: ErrorCodesEnums
    ):
        """
        Initialize the handler with a logger and error codes.

        :param logger: The logger used for logging exceptions.
        :param errors: Error catalogue used to classify foreign exceptions.
        """

        self._logger = logger
        self._errors = errors

    def handle(self, exc: BaseException) -> int:
        """
        Log the exception and return the exit code the process should end with.

        :param exc: The exception raised by a command.
        :return: Process exit code.
        """

        if isinstance(exc, ToolkitException):
            self._logger.error(f"[{exc.error_code}] {exc.message}")
            self._echo(exc.error_code, exc.message)
            return exc.exit_code

        if isinstance(exc, ValidationError):
            config_error = ToolkitException(self._errors.Config.INVALID_CONFIG, cause=str(exc))
            self._logger.error(f"[{config_error.error_code}] {exc}")
            self._echo(config_error.error_code, config_error.message)
            return config_error.exit_code

        undefined_error = ToolkitException(self._errors.Common.UNDEFINED, cause=repr(exc))
        self._logger.error("".join(traceback.format_exception(exc)))
        self._echo(undefined_error.error_code, undefined_error.message)
        return undefined_error.exit_code

    def __call__(self, func):
        """
        Run a command callback and convert escaping exceptions into a click exit.

        :param func: The command callback.
        :return: Wrapped callback.
        """

        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except (click.exceptions.Exit, click.ClickException, click.Abort):
                raise
            except Exception as error:
                raise click.exceptions.Exit(self.handle(error)) from error

        wrapper.__name__ = func.__name__
        wrapper.__doc__ = func.__doc__
        return wrapper

    @staticmethod
    def _echo(code: int, message: str) -> None:
        click.echo(f"error {code}: {message}", err=True)
