from .estimate import PairwiseMoments, RankEstimate
