from .exception import ICommandExceptionHandler
