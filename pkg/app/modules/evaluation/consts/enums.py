from enum import Enum
from typing import Type

from app.common.consts.enums import StringEnum


class StudyName(StringEnum):
    """Estimator-quality studies runnable from the command line."""

    VARIANCE = "variance"
    FIDELITY = "fidelity"


class ScoreProfile(StringEnum):
    """
    Synthetic single-user score vectors for the variance study.

    Attributes:
        GAUSSIAN: negatives at standard-normal quantiles, the positive placed
            between the r-th and (r+1)-th highest negative.
        STEP: r negatives just above the positive, the rest far enough below
            that they never violate the margin.
    """

    GAUSSIAN = "gaussian"
    STEP = "step"


class MetricName(StringEnum):
    PRECISION = "precision"
    RECALL = "recall"
    NDCG = "ndcg"


class EvalFiles(str, Enum):
    """File names written by evaluation and study commands."""

    REPORT_JSON = "eval_report.json"
    REPORT_CSV = "eval_report.csv"
    VARIANCE_CSV = "variance_study.csv"
    FIDELITY_CSV = "fidelity_study.csv"
    FIDELITY_PAIRS_CSV = "fidelity_pairs.csv"


class EvaluationEnums:
    """
    Container of enums used across the evaluation module.
    """

    Study: Type[StudyName] = StudyName
    Profile: Type[ScoreProfile] = ScoreProfile
    Metric: Type[MetricName] = MetricName
    Files: Type[EvalFiles] = EvalFiles


DEFAULT_CUTOFFS = (5, 30)
# Users scored per block during evaluation
USER_CHUNK = 256
STUDY_COLUMNS = ("estimator", "q", "true_rank", "mean", "std", "rel_std")
