from .consts import get_error_codes, get_logger_config
