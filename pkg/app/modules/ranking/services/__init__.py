from .comparators import Comparator
from .estimators import RankEstimator
from .fixed_scores import FixedScores
