from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np


class IScorer(ABC):
    """
    Anything that scores (user, item) pairs in blocks.

    Implementations are read-only during scoring and may be called from
    several threads at once.
    """

    @property
    @abstractmethod
    def num_items(self) -> int:
        ...

    @abstractmethod
    def score_block(self, users: Sequence[int] | np.ndarray, items: Sequence[int] | np.ndarray) -> np.ndarray:
        """
        Score every (user, item) combination.

        :param users: User indices (repeats allowed).
        :param items: Item indices (repeats allowed).
        :return: Matrix of shape (len(users), len(items)).
        """
        ...
