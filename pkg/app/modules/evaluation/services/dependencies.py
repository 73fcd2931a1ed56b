from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_eval_logger
from app.common.utils.dependencies import get_fingerprinter
from app.modules.evaluation.contracts import IEstimatorStudies, IEvaluator, IRankingMetrics, IReportWriter
from app.modules.evaluation.services import EstimatorStudies, Evaluator, RankingMetrics, ReportWriter
from app.modules.ranking.services.dependencies import get_rank_estimator


def get_ranking_metrics() -> IRankingMetrics:
    return RankingMetrics(errors=get_error_codes(), logger=get_eval_logger())


def get_evaluator() -> IEvaluator:
    """
    Dependency provider for IEvaluator implementation.

    Wires the metric implementation and the fingerprinter used for the
    report's configuration digest.

    :return: Instance of Evaluator.
    """

    return Evaluator(
        errors=get_error_codes(),
        logger=get_eval_logger(),
        metrics=RankingMetrics(errors=get_error_codes(), logger=get_eval_logger()),
        fingerprinter=get_fingerprinter(),
    )


def get_estimator_studies() -> IEstimatorStudies:
    """
    Dependency provider for IEstimatorStudies implementation.

    :return: Instance of EstimatorStudies.
    """

    return EstimatorStudies(
        errors=get_error_codes(),
        logger=get_eval_logger(),
        estimator=get_rank_estimator(),
    )


def get_report_writer() -> IReportWriter:
    return ReportWriter(errors=get_error_codes(), logger=get_eval_logger())
