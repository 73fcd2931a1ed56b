from typing import Sequence

import numpy as np

from app.common.contracts import IScorer


class FixedScores(IScorer):
    """A single user's precomputed score vector; every user index maps to it."""

    def __init__(self, scores: np.ndarray):
        self._scores = np.asarray(scores, dtype=np.float64)

    @property
    def num_items(self) -> int:
        return len(self._scores)

    def score_block(self, users: Sequence[int] | np.ndarray, items: Sequence[int] | np.ndarray) -> np.ndarray:
        row = self._scores[np.asarray(items, dtype=np.int64)]
        return np.tile(row, (len(users), 1))
