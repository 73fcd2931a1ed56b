from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_ranking_logger
from app.modules.ranking.contracts import IRankEstimator
from app.modules.ranking.services import RankEstimator


def get_rank_estimator() -> IRankEstimator:
    """
    Dependency provider for IRankEstimator implementation.

    :return: Instance of RankEstimator.
    """

    return RankEstimator(errors=get_error_codes(), logger=get_ranking_logger())
