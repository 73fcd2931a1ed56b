from .evaluation_services import IEstimatorStudies, IEvaluator, IRankingMetrics, IReportWriter
