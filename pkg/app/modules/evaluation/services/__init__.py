from .evaluator import Evaluator
from .metrics import RankingMetrics
from .report_writer import ReportWriter
from .studies import EstimatorStudies
