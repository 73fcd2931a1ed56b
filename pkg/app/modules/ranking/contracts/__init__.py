from .rank_estimators import IRankEstimator
