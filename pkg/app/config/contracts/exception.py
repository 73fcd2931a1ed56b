from abc import ABC, abstractmethod


class ICommandExceptionHandler(ABC):
    """
    Interface for handling exceptions that escape a CLI command.

    The handler logs the exception, reports it on stderr and maps it to the
    documented process exit code.
    """

    @abstractmethod
    def handle(self, exc: BaseException) -> int:
        """
        Handle an exception and return the process exit code.

        :param exc: The exception raised by a command.
        :return: Exit code (2 config, 3 data, 4 numerical divergence, 1 other).
        """
        ...

    @abstractmethod
    def __call__(self, func):
        """
        Decorate a command callback so escaping exceptions end the process
        with the mapped exit code.

        :param func: Command callback.
        :return: Wrapped callback.
        """
        ...
