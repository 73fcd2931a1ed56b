from typing import Type

from app.common.consts.enums import StringEnum


class ComparatorKind(StringEnum):
    """
    Per-negative terms summed into a smooth rank.

    Attributes:
        MARGIN: hinge ``|1 - f_y + f_y'|_+``.
        SUPPRESSED_MARGIN: ``2 sigma(hinge) - 1``; zero for non-violators, below 1 for all.
        SIGMOID: ``sigma(f_y' - f_y)``; no margin.
    """

    MARGIN = "mr"
    SUPPRESSED_MARGIN = "smr"
    SIGMOID = "sr"


class EstimatorKind(StringEnum):
    """Rank estimators; values are the config strings."""

    EXACT = "exact"
    POINTWISE = "pointwise"
    PAIRWISE_SAMPLED = "pairwise"
    BATCH = "batch"
    MINIBATCH = "minibatch"


class RankingEnums:
    """
    Container of enums used across the ranking module.
    """

    Comparator: Type[ComparatorKind] = ComparatorKind
    Estimator: Type[EstimatorKind] = EstimatorKind


# First chunk of uniform draws in the pairwise sampler; later chunks double
FIRST_DRAW_CHUNK = 8
MAX_DRAW_CHUNK = 1 << 16
