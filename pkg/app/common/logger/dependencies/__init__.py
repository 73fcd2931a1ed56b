from .logger import (
    get_base_logger,
    get_data_logger,
    get_eval_logger,
    get_logger_manager,
    get_model_logger,
    get_ranking_logger,
    get_train_logger,
)
