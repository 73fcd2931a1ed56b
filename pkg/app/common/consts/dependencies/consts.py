from app.common.consts import ErrorCodesEnums, LoggerConfigEnums


def get_error_codes() -> ErrorCodesEnums:
    """
    Dependency provider for error code enums.

    :return: An instance of `ErrorCodesEnums` with the grouped error catalogues.
    """

    return ErrorCodesEnums()


def get_logger_config() -> LoggerConfigEnums:
    """
    Dependency provider for logger configuration enums.

    :return: An instance of `LoggerConfigEnums` with logger presets, formats and levels.
    """

    return LoggerConfigEnums()
